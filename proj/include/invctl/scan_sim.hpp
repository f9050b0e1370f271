#pragma once

#include "invctl/barcode_codec.hpp"
#include "invctl/tag_codec.hpp"

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace invctl {

enum class ReaderKind { Barcode, Nfc };
enum class FailureReason { Angle, Range, Damage, Size, Mismatch };

std::string_view to_string(ReaderKind r) noexcept;
std::string_view to_string(FailureReason r) noexcept;
std::optional<FailureReason> parse_failure_reason(std::string_view text) noexcept;

namespace link_model {
/// Largest folded tilt at which a barcode still decodes.
inline constexpr int kBarcodeMaxTiltDeg = 8;
/// Last barcode angle that was actually measured.
inline constexpr int kBarcodeSweepEndDeg = 172;
inline constexpr double kNfcRangeCm = 10.0;
/// 424 kbit/s expressed in bits per millisecond.
inline constexpr double kNfcBitsPerMs = 424.0;
/// Synthetic constants: field activation for NFC and trigger-and-decode for barcode.
inline constexpr double kNfcSetupMs = 10.0;
inline constexpr double kBarcodeDecodeMs = 300.0;
/// Recorded only; not used by the model.
inline constexpr double kNfcSupplyCurrentMa = 15.0;
}  // namespace link_model

struct ScanContext {
    int tilt_deg = 0;
    double distance_cm = 0.0;
    Damage damage = Damage::None;
    ReaderKind reader = ReaderKind::Nfc;

    /// Maps any integer angle into [0, 360).
    static int normalize_tilt(int deg) noexcept;
    /// Folds [0, 360) onto [0, 180]; tilt and 360 - tilt are equivalent.
    static int fold_tilt(int deg) noexcept;
};

using ScanPayload = std::variant<std::monostate, Bytes, std::string>;

struct ScanOutcome {
    bool success = false;
    std::optional<FailureReason> failure_reason;
    double latency_ms = 0.0;
    ScanPayload payload;

    static ScanOutcome ok(double latency_ms, ScanPayload payload) {
        return {true, std::nullopt, latency_ms, std::move(payload)};
    }
    static ScanOutcome fail(FailureReason reason, double latency_ms = 0.0) {
        return {false, reason, latency_ms, std::monostate{}};
    }

    bool operator==(const ScanOutcome&) const = default;
};

/// Deterministic mode treats DIFFICULT labels as readable. Stochastic mode reads
/// them with `difficult_success_probability`, drawn from a caller-owned generator.
struct ScanConfig {
    bool stochastic = false;
    double difficult_success_probability = 0.5;
};

/// Failure order is DAMAGE, ANGLE, SIZE. `rng` is required when config.stochastic.
ScanOutcome scan_barcode(const BarcodeLabel& label, const ScanContext& ctx,
                         const ScanConfig& config = {}, std::mt19937_64* rng = nullptr);

ScanOutcome scan_nfc(const Type2Tag& tag, const ScanContext& ctx);

/// Setup plus transfer time for an NFC payload of `payload_bytes`.
double nfc_latency_ms(std::size_t payload_bytes) noexcept;

enum class Technology { Barcode, Nfc };
std::string_view to_string(Technology t) noexcept;
std::optional<Technology> parse_technology(std::string_view text) noexcept;

struct SweepRow {
    int angle_deg;
    bool readable;
};

/// Barcode: multiples of `step_deg` covering [0, 172], including the first grid
/// point at or past 172. NFC: multiples of `step_deg` in [0, 360).
/// Uses an undamaged EASY label or an in-range tag. step_deg < 1 is clamped to 1.
std::vector<SweepRow> sweep_angles(Technology technology, int step_deg);

/// CSV with header `technology,angle_deg,readable`, readable as 1/0, LF endings.
std::string sweep_csv(Technology technology, const std::vector<SweepRow>& rows);

}  // namespace invctl
