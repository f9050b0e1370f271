#include "invctl/result.hpp"

namespace invctl {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidName: return "InvalidName";
        case Errc::InvalidDates: return "InvalidDates";
        case Errc::BadVersion: return "BadVersion";
        case Errc::Truncated: return "Truncated";
        case Errc::TrailingGarbage: return "TrailingGarbage";
        case Errc::CapacityExceeded: return "CapacityExceeded";
        case Errc::TagLocked: return "TagLocked";
        case Errc::BlankTag: return "BlankTag";
        case Errc::MalformedTlv: return "MalformedTlv";
        case Errc::InvalidCharacter: return "InvalidCharacter";
        case Errc::WrongLength: return "WrongLength";
        case Errc::NonDigit: return "NonDigit";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::InvalidLabel: return "InvalidLabel";
        case Errc::DuplicateSku: return "DuplicateSku";
        case Errc::ScanFailed: return "ScanFailed";
        case Errc::UnknownProduct: return "UnknownProduct";
        case Errc::UnknownCarrier: return "UnknownCarrier";
        case Errc::AlreadySold: return "AlreadySold";
        case Errc::MalformedPayload: return "MalformedPayload";
        case Errc::ImmutableCarrier: return "ImmutableCarrier";
        case Errc::ItemSold: return "ItemSold";
        case Errc::CorruptLog: return "CorruptLog";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace invctl
