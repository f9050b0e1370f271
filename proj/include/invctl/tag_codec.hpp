#pragma once

#include "invctl/result.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace invctl {

using Bytes = std::vector<std::uint8_t>;

/// Product payload carried on a tag. Dates are day counts since 2000-01-01.
struct ProductRecord {
    std::uint32_t product_id = 0;
    std::string name;
    std::uint32_t price_minor = 0;
    std::uint16_t manufacturing_date = 0;
    std::uint16_t expiry_date = 0;
    std::uint16_t delivery_date = 0;

    bool operator==(const ProductRecord&) const = default;
};

namespace record_format {
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kFixedBytes = 16;  // everything except the name
inline constexpr std::size_t kMaxNameBytes = 64;
inline constexpr std::size_t kMinEncoded = kFixedBytes + 1;
inline constexpr std::size_t kMaxEncoded = kFixedBytes + kMaxNameBytes;
}  // namespace record_format

/// Checks name length/UTF-8/NUL and date ordering.
Result<void> validate_record(const ProductRecord& record);

/// Returns true if `text` is well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid_utf8(std::string_view text) noexcept;

/**
 * Serializes a record in the fixed big-endian layout:
 *
 *   [0]        version 0x01
 *   [1..4]     product_id
 *   [5]        name length n
 *   [6..6+n)   name (UTF-8)
 *   next 4     price_minor
 *   next 6     manufacturing, expiry, delivery (u16 each)
 *
 * Total length is 16 + n.
 */
Result<Bytes> encode_record(const ProductRecord& record);

Result<ProductRecord> decode_record(std::span<const std::uint8_t> bytes);

using TagUid = std::array<std::uint8_t, 7>;

/// Simulated NFC Forum Type 2 tag with a 128-byte data area.
struct Type2Tag {
    static constexpr std::size_t capacity_bytes = 128;
    static constexpr std::uint8_t kNdefTlv = 0x03;
    static constexpr std::uint8_t kTerminatorTlv = 0xFE;
    /// Tag byte, length byte and terminator.
    static constexpr std::size_t kFramingBytes = 3;
    static constexpr std::size_t kMaxPayload = capacity_bytes - kFramingBytes;

    TagUid uid{};
    std::array<std::uint8_t, capacity_bytes> data{};
    bool write_locked = false;

    [[nodiscard]] bool blank() const noexcept;
    bool operator==(const Type2Tag&) const = default;
};

/// Frames an arbitrary payload as 0x03 L payload 0xFE 00.. into the data area.
Result<Type2Tag> write_tlv(const Type2Tag& tag, std::span<const std::uint8_t> payload);

/// Parses the TLV frame and returns its payload. Never reads outside `data`.
Result<Bytes> read_tlv(const Type2Tag& tag);

Result<Type2Tag> write_tag(const Type2Tag& tag, const ProductRecord& record);
Result<ProductRecord> read_tag(const Type2Tag& tag);

/// Two hex digits per byte, space separated, 16 bytes per line, LF terminated.
std::string hex_dump(std::span<const std::uint8_t> bytes);

/// Uppercase hex without separators, e.g. "04000000000001".
std::string uid_to_hex(const TagUid& uid);
Result<TagUid> uid_from_hex(std::string_view hex);

std::string to_hex(std::span<const std::uint8_t> bytes);
Result<Bytes> from_hex(std::string_view hex);

}  // namespace invctl
