#include "invctl/tag_codec.hpp"

#include <algorithm>
#include <cstdio>

namespace invctl {

namespace {

void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t off) {
    return static_cast<std::uint16_t>((in[off] << 8) | in[off + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t off) {
    return (std::uint32_t{in[off]} << 24) | (std::uint32_t{in[off + 1]} << 16) |
           (std::uint32_t{in[off + 2]} << 8) | std::uint32_t{in[off + 3]};
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexDigits[] = "0123456789ABCDEF";

}  // namespace

bool is_valid_utf8(std::string_view text) noexcept {
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
            return false;  // overlong
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

Result<void> validate_record(const ProductRecord& record) {
    const auto& name = record.name;
    if (name.empty() || name.size() > record_format::kMaxNameBytes)
        return make_error(Errc::InvalidName,
                          "name must be 1..64 bytes, got " + std::to_string(name.size()));
    if (name.find('\0') != std::string::npos)
        return make_error(Errc::InvalidName, "name contains a NUL byte");
    if (!is_valid_utf8(name)) return make_error(Errc::InvalidName, "name is not valid UTF-8");
    if (record.expiry_date < record.manufacturing_date)
        return make_error(Errc::InvalidDates, "expiry_date precedes manufacturing_date");
    return {};
}

Result<Bytes> encode_record(const ProductRecord& record) {
    if (auto v = validate_record(record); !v) return v.error();

    Bytes out;
    out.reserve(record_format::kFixedBytes + record.name.size());
    out.push_back(record_format::kVersion);
    put_u32(out, record.product_id);
    out.push_back(static_cast<std::uint8_t>(record.name.size()));
    out.insert(out.end(), record.name.begin(), record.name.end());
    put_u32(out, record.price_minor);
    put_u16(out, record.manufacturing_date);
    put_u16(out, record.expiry_date);
    put_u16(out, record.delivery_date);
    return out;
}

Result<ProductRecord> decode_record(std::span<const std::uint8_t> in) {
    if (in.size() < record_format::kMinEncoded)
        return make_error(Errc::Truncated, "record needs at least 17 bytes, got " +
                                               std::to_string(in.size()));
    if (in[0] != record_format::kVersion)
        return make_error(Errc::BadVersion, "unsupported record version " + std::to_string(in[0]));

    const std::size_t name_len = in[5];
    if (name_len == 0 || name_len > record_format::kMaxNameBytes)
        return make_error(Errc::InvalidName, "name length " + std::to_string(name_len));
    const std::size_t expected = record_format::kFixedBytes + name_len;
    if (in.size() < expected) return make_error(Errc::Truncated, "record body cut short");
    if (in.size() > expected)
        return make_error(Errc::TrailingGarbage,
                          std::to_string(in.size() - expected) + " bytes after record");

    ProductRecord r;
    r.product_id = get_u32(in, 1);
    r.name.assign(reinterpret_cast<const char*>(in.data() + 6), name_len);
    std::size_t off = 6 + name_len;
    r.price_minor = get_u32(in, off);
    r.manufacturing_date = get_u16(in, off + 4);
    r.expiry_date = get_u16(in, off + 6);
    r.delivery_date = get_u16(in, off + 8);

    if (auto v = validate_record(r); !v) return v.error();
    return r;
}

bool Type2Tag::blank() const noexcept {
    return std::all_of(data.begin(), data.end(), [](std::uint8_t b) { return b == 0; });
}

Result<Type2Tag> write_tlv(const Type2Tag& tag, std::span<const std::uint8_t> payload) {
    if (tag.write_locked) return make_error(Errc::TagLocked, "tag " + uid_to_hex(tag.uid) + " is write locked");
    if (payload.size() > Type2Tag::kMaxPayload)
        return make_error(Errc::CapacityExceeded, std::to_string(payload.size()) +
                                                      " byte payload exceeds 125 byte limit");
    Type2Tag out = tag;
    out.data.fill(0);
    out.data[0] = Type2Tag::kNdefTlv;
    out.data[1] = static_cast<std::uint8_t>(payload.size());
    std::copy(payload.begin(), payload.end(), out.data.begin() + 2);
    out.data[2 + payload.size()] = Type2Tag::kTerminatorTlv;
    return out;
}

Result<Bytes> read_tlv(const Type2Tag& tag) {
    const auto& d = tag.data;
    if (tag.blank()) return make_error(Errc::BlankTag, "tag data area is blank");
    if (d[0] != Type2Tag::kNdefTlv)
        return make_error(Errc::MalformedTlv, "unexpected TLV tag byte " + std::to_string(d[0]));
    const std::size_t len = d[1];
    if (len > Type2Tag::kMaxPayload)
        return make_error(Errc::MalformedTlv, "TLV length " + std::to_string(len) + " exceeds 125");
    const std::size_t term = 2 + len;
    if (d[term] != Type2Tag::kTerminatorTlv)
        return make_error(Errc::MalformedTlv, "missing terminator TLV");
    if (!std::all_of(d.begin() + static_cast<std::ptrdiff_t>(term) + 1, d.end(),
                     [](std::uint8_t b) { return b == 0; }))
        return make_error(Errc::MalformedTlv, "non-zero bytes after terminator");
    return Bytes(d.begin() + 2, d.begin() + static_cast<std::ptrdiff_t>(term));
}

Result<Type2Tag> write_tag(const Type2Tag& tag, const ProductRecord& record) {
    auto encoded = encode_record(record);
    if (!encoded) return encoded.error();
    return write_tlv(tag, *encoded);
}

Result<ProductRecord> read_tag(const Type2Tag& tag) {
    auto payload = read_tlv(tag);
    if (!payload) return payload.error();
    return decode_record(*payload);
}

std::string hex_dump(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 3);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        out.push_back(kHexDigits[bytes[i] >> 4]);
        out.push_back(kHexDigits[bytes[i] & 0x0F]);
        const bool end_of_line = (i % 16 == 15) || (i + 1 == bytes.size());
        out.push_back(end_of_line ? '\n' : ' ');
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0F]);
    }
    return out;
}

Result<Bytes> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) return make_error(Errc::MalformedPayload, "odd-length hex string");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = hex_value(hex[i]);
        const int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) return make_error(Errc::MalformedPayload, "invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::string uid_to_hex(const TagUid& uid) { return to_hex(uid); }

Result<TagUid> uid_from_hex(std::string_view hex) {
    if (hex.size() != 14) return make_error(Errc::UnknownCarrier, "UID must be 14 hex digits");
    auto bytes = from_hex(hex);
    if (!bytes) return make_error(Errc::UnknownCarrier, bytes.error().message);
    TagUid uid{};
    std::copy(bytes->begin(), bytes->end(), uid.begin());
    return uid;
}

}  // namespace invctl
