#pragma once

#include "invctl/result.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace invctl {

enum class Symbology { Code39, Ean8, Ean13 };
enum class Damage { None, Scratched, Wrinkled };
enum class ReadabilityClass { Easy, Difficult, VeryDifficult };

std::string_view to_string(Symbology s) noexcept;
std::string_view to_string(Damage d) noexcept;
std::string_view to_string(ReadabilityClass c) noexcept;
std::optional<Symbology> parse_symbology(std::string_view text) noexcept;
std::optional<Damage> parse_damage(std::string_view text) noexcept;

namespace code39 {
/// Character set in check-value order: index == value.
inline constexpr std::string_view kAlphabet = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ-. $/+%";
inline constexpr std::size_t kMaxLength = 30;
inline constexpr char kStartStop = '*';

/// Value 0..42 of a Code 39 character, or nullopt outside the alphabet.
std::optional<int> value_of(char c) noexcept;
}  // namespace code39

/// Mod-43 check character over the payload.
Result<char> code39_check_char(std::string_view payload);

/// Human-readable symbol text `*PAYLOAD[C]*` with optional check character.
Result<std::string> code39_encode(std::string_view payload, bool with_check);

/// Inverse of code39_encode. Verifies the check character when `with_check` is set.
Result<std::string> code39_decode(std::string_view symbol, bool with_check);

/// EAN check digit for a 7-digit (EAN-8) or 12-digit (EAN-13) payload.
Result<int> ean_check_digit(std::string_view digits);

/// Table 3 physical width in millimetres for 1..60 characters.
Result<double> width_model(int char_count);

ReadabilityClass readability_class(double width_mm) noexcept;

/// Physical footprint of a Type 2 tag, independent of stored bytes.
inline constexpr double kNfcTagFootprintMm = 35.0;

/// Printed barcode label. Immutable once constructed; width is derived from the
/// character count. Construction does not validate; use make_label for that.
class BarcodeLabel {
public:
    BarcodeLabel(Symbology symbology, std::string chars, Damage damage = Damage::None);

    [[nodiscard]] Symbology symbology() const noexcept { return symbology_; }
    [[nodiscard]] const std::string& chars() const noexcept { return chars_; }
    [[nodiscard]] double width_mm() const noexcept { return width_mm_; }
    [[nodiscard]] Damage damage() const noexcept { return damage_; }

    /// Copy of this label with a different physical condition.
    [[nodiscard]] BarcodeLabel with_damage(Damage d) const { return {symbology_, chars_, d}; }

    bool operator==(const BarcodeLabel&) const = default;

private:
    Symbology symbology_;
    std::string chars_;
    Damage damage_;
    double width_mm_;
};

enum class LabelIssue { None, Empty, TooLong, WrongLength, BadCharacter, CheckMismatch };
std::string_view to_string(LabelIssue issue) noexcept;

struct LabelValidation {
    bool valid = false;
    LabelIssue issue = LabelIssue::None;

    explicit operator bool() const noexcept { return valid; }
};

/// Checks alphabet, length and embedded check digit. For Code 39, the trailing
/// mod-43 character is verified only when `code39_check` is set.
LabelValidation validate(Symbology symbology, std::string_view chars, bool code39_check = false);
LabelValidation validate(const BarcodeLabel& label, bool code39_check = false);

/// Validated construction.
Result<BarcodeLabel> make_label(Symbology symbology, std::string chars, bool code39_check = false);

/// Full 13-digit EAN for a product id: id zero-padded to 12 digits plus check digit.
std::string ean13_for_product(std::uint32_t product_id);

}  // namespace invctl
