#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace invctl {

/// Error codes shared by every module. Names are the machine codes exposed over the API.
enum class Errc {
    // tag_codec
    InvalidName,
    InvalidDates,
    BadVersion,
    Truncated,
    TrailingGarbage,
    CapacityExceeded,
    TagLocked,
    BlankTag,
    MalformedTlv,
    // barcode_codec
    InvalidCharacter,
    WrongLength,
    NonDigit,
    OutOfRange,
    InvalidLabel,
    // inventory_core
    DuplicateSku,
    ScanFailed,
    UnknownProduct,
    UnknownCarrier,
    AlreadySold,
    MalformedPayload,
    ImmutableCarrier,
    ItemSold,
    CorruptLog,
    IoError,
};

std::string_view to_string(Errc code) noexcept;

struct Error {
    Errc code;
    std::string message;
};

class BadResultAccess : public std::logic_error {
public:
    explicit BadResultAccess(const Error& e)
        : std::logic_error(std::string(to_string(e.code)) + ": " + e.message), error(e) {}
    Error error;
};

/// Value-or-error return type, in the spirit of std::expected.
template <typename T>
class [[nodiscard]] Result {
public:
    Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}  // NOLINT(implicit)
    Result(Error error) : v_(std::in_place_index<1>, std::move(error)) {}  // NOLINT(implicit)

    [[nodiscard]] bool ok() const noexcept { return v_.index() == 0; }
    explicit operator bool() const noexcept { return ok(); }

    const T& value() const& {
        if (!ok()) throw BadResultAccess(std::get<1>(v_));
        return std::get<0>(v_);
    }
    T& value() & {
        if (!ok()) throw BadResultAccess(std::get<1>(v_));
        return std::get<0>(v_);
    }
    T&& value() && {
        if (!ok()) throw BadResultAccess(std::get<1>(v_));
        return std::get<0>(std::move(v_));
    }

    const Error& error() const { return std::get<1>(v_); }
    [[nodiscard]] Errc code() const { return error().code; }

    const T& operator*() const& { return value(); }
    T& operator*() & { return value(); }
    const T* operator->() const { return &value(); }
    T* operator->() { return &value(); }

private:
    std::variant<T, Error> v_;
};

template <>
class [[nodiscard]] Result<void> {
public:
    Result() = default;
    Result(Error error) : error_(std::move(error)), ok_(false) {}  // NOLINT(implicit)

    [[nodiscard]] bool ok() const noexcept { return ok_; }
    explicit operator bool() const noexcept { return ok_; }
    const Error& error() const { return error_; }
    [[nodiscard]] Errc code() const { return error_.code; }
    void value() const {
        if (!ok_) throw BadResultAccess(error_);
    }

private:
    Error error_{Errc::IoError, {}};
    bool ok_ = true;
};

inline Error make_error(Errc code, std::string message) { return Error{code, std::move(message)}; }

}  // namespace invctl
