#include "invctl/barcode_codec.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace invctl {

namespace {

struct WidthAnchor {
    int chars;
    double mm;
};

// Measured label widths by character count.
constexpr std::array<WidthAnchor, 4> kWidthAnchors{{{8, 33.0}, {12, 35.0}, {20, 66.0}, {30, 94.0}}};
constexpr int kMinChars = 1;
constexpr int kMaxChars = 60;

constexpr double kEasyMaxMm = 50.0;
constexpr double kDifficultMaxMm = 80.0;

bool all_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

double width_for_length(std::size_t len) {
    const int n = static_cast<int>(std::clamp<std::size_t>(len, kMinChars, kMaxChars));
    return width_model(n).value();
}

}  // namespace

std::string_view to_string(Symbology s) noexcept {
    switch (s) {
        case Symbology::Code39: return "CODE39";
        case Symbology::Ean8: return "EAN8";
        case Symbology::Ean13: return "EAN13";
    }
    return "?";
}

std::string_view to_string(Damage d) noexcept {
    switch (d) {
        case Damage::None: return "NONE";
        case Damage::Scratched: return "SCRATCHED";
        case Damage::Wrinkled: return "WRINKLED";
    }
    return "?";
}

std::string_view to_string(ReadabilityClass c) noexcept {
    switch (c) {
        case ReadabilityClass::Easy: return "EASY";
        case ReadabilityClass::Difficult: return "DIFFICULT";
        case ReadabilityClass::VeryDifficult: return "VERY_DIFFICULT";
    }
    return "?";
}

std::string_view to_string(LabelIssue issue) noexcept {
    switch (issue) {
        case LabelIssue::None: return "NONE";
        case LabelIssue::Empty: return "EMPTY";
        case LabelIssue::TooLong: return "TOO_LONG";
        case LabelIssue::WrongLength: return "WRONG_LENGTH";
        case LabelIssue::BadCharacter: return "BAD_CHARACTER";
        case LabelIssue::CheckMismatch: return "CHECK_MISMATCH";
    }
    return "?";
}

std::optional<Symbology> parse_symbology(std::string_view text) noexcept {
    for (auto s : {Symbology::Code39, Symbology::Ean8, Symbology::Ean13})
        if (to_string(s) == text) return s;
    return std::nullopt;
}

std::optional<Damage> parse_damage(std::string_view text) noexcept {
    for (auto d : {Damage::None, Damage::Scratched, Damage::Wrinkled})
        if (to_string(d) == text) return d;
    return std::nullopt;
}

std::optional<int> code39::value_of(char c) noexcept {
    const auto pos = kAlphabet.find(c);
    if (pos == std::string_view::npos) return std::nullopt;
    return static_cast<int>(pos);
}

Result<char> code39_check_char(std::string_view payload) {
    if (payload.empty()) return make_error(Errc::InvalidCharacter, "empty Code 39 payload");
    int sum = 0;
    for (char c : payload) {
        const auto v = code39::value_of(c);
        if (!v) return make_error(Errc::InvalidCharacter,
                                  std::string("'") + c + "' is not a Code 39 character");
        sum += *v;
    }
    return code39::kAlphabet[static_cast<std::size_t>(sum % 43)];
}

Result<std::string> code39_encode(std::string_view payload, bool with_check) {
    if (payload.size() > code39::kMaxLength)
        return make_error(Errc::OutOfRange, "Code 39 payload longer than 30 characters");
    auto check = code39_check_char(payload);
    if (!check) return check.error();
    std::string out;
    out.push_back(code39::kStartStop);
    out.append(payload);
    if (with_check) out.push_back(*check);
    out.push_back(code39::kStartStop);
    return out;
}

Result<std::string> code39_decode(std::string_view symbol, bool with_check) {
    if (symbol.size() < 3 || symbol.front() != code39::kStartStop ||
        symbol.back() != code39::kStartStop)
        return make_error(Errc::InvalidLabel, "missing start/stop characters");
    std::string_view body = symbol.substr(1, symbol.size() - 2);
    if (with_check) {
        if (body.size() < 2) return make_error(Errc::InvalidLabel, "no room for a check character");
        const char given = body.back();
        body.remove_suffix(1);
        auto expected = code39_check_char(body);
        if (!expected) return expected.error();
        if (*expected != given) return make_error(Errc::InvalidLabel, "check character mismatch");
    } else if (auto check = code39_check_char(body); !check) {
        return check.error();
    }
    return std::string(body);
}

Result<int> ean_check_digit(std::string_view digits) {
    if (digits.size() != 7 && digits.size() != 12)
        return make_error(Errc::WrongLength,
                          "EAN payload must be 7 or 12 digits, got " + std::to_string(digits.size()));
    if (!all_digits(digits)) return make_error(Errc::NonDigit, "EAN payload contains a non-digit");
    int sum = 0;
    int weight = 3;  // rightmost payload digit
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        sum += (*it - '0') * weight;
        weight = 4 - weight;
    }
    return (10 - sum % 10) % 10;
}

Result<double> width_model(int char_count) {
    if (char_count < kMinChars || char_count > kMaxChars)
        return make_error(Errc::OutOfRange,
                          "character count " + std::to_string(char_count) + " outside 1..60");
    if (char_count <= kWidthAnchors.front().chars) return kWidthAnchors.front().mm;
    for (std::size_t i = 1; i < kWidthAnchors.size(); ++i) {
        const auto& lo = kWidthAnchors[i - 1];
        const auto& hi = kWidthAnchors[i];
        if (char_count <= hi.chars)
            return lo.mm + (char_count - lo.chars) * (hi.mm - lo.mm) / (hi.chars - lo.chars);
    }
    // Beyond the last anchor, extend the final segment's slope.
    const auto& a = kWidthAnchors[kWidthAnchors.size() - 2];
    const auto& b = kWidthAnchors.back();
    const double slope = (b.mm - a.mm) / (b.chars - a.chars);
    return b.mm + (char_count - b.chars) * slope;
}

ReadabilityClass readability_class(double width_mm) noexcept {
    if (width_mm <= kEasyMaxMm) return ReadabilityClass::Easy;
    if (width_mm <= kDifficultMaxMm) return ReadabilityClass::Difficult;
    return ReadabilityClass::VeryDifficult;
}

BarcodeLabel::BarcodeLabel(Symbology symbology, std::string chars, Damage damage)
    : symbology_(symbology),
      chars_(std::move(chars)),
      damage_(damage),
      width_mm_(width_for_length(chars_.size())) {}

LabelValidation validate(Symbology symbology, std::string_view chars, bool code39_check) {
    auto fail = [](LabelIssue issue) { return LabelValidation{false, issue}; };
    if (chars.empty()) return fail(LabelIssue::Empty);

    switch (symbology) {
        case Symbology::Code39: {
            if (chars.size() > code39::kMaxLength) return fail(LabelIssue::TooLong);
            for (char c : chars)
                if (!code39::value_of(c)) return fail(LabelIssue::BadCharacter);
            if (code39_check) {
                if (chars.size() < 2) return fail(LabelIssue::WrongLength);
                if (code39_check_char(chars.substr(0, chars.size() - 1)).value() != chars.back())
                    return fail(LabelIssue::CheckMismatch);
            }
            return {true, LabelIssue::None};
        }
        case Symbology::Ean8:
        case Symbology::Ean13: {
            const std::size_t want = symbology == Symbology::Ean8 ? 8 : 13;
            if (chars.size() != want) return fail(LabelIssue::WrongLength);
            if (!all_digits(chars)) return fail(LabelIssue::BadCharacter);
            const int check = ean_check_digit(chars.substr(0, want - 1)).value();
            if (chars.back() - '0' != check) return fail(LabelIssue::CheckMismatch);
            return {true, LabelIssue::None};
        }
    }
    return fail(LabelIssue::BadCharacter);
}

LabelValidation validate(const BarcodeLabel& label, bool code39_check) {
    return validate(label.symbology(), label.chars(), code39_check);
}

Result<BarcodeLabel> make_label(Symbology symbology, std::string chars, bool code39_check) {
    const auto v = validate(symbology, chars, code39_check);
    if (!v)
        return make_error(Errc::InvalidLabel, std::string(to_string(symbology)) + " label rejected: " +
                                                  std::string(to_string(v.issue)));
    return BarcodeLabel(symbology, std::move(chars));
}

std::string ean13_for_product(std::uint32_t product_id) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%012u", static_cast<unsigned>(product_id));
    std::string code(buf);
    code.push_back(static_cast<char>('0' + ean_check_digit(code).value()));
    return code;
}

}  // namespace invctl
