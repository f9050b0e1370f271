#include "invctl/scan_sim.hpp"

#include <cassert>

namespace invctl {

std::string_view to_string(ReaderKind r) noexcept {
    return r == ReaderKind::Barcode ? "BARCODE_READER" : "NFC_READER";
}

std::string_view to_string(FailureReason r) noexcept {
    switch (r) {
        case FailureReason::Angle: return "ANGLE";
        case FailureReason::Range: return "RANGE";
        case FailureReason::Damage: return "DAMAGE";
        case FailureReason::Size: return "SIZE";
        case FailureReason::Mismatch: return "MISMATCH";
    }
    return "?";
}

std::optional<FailureReason> parse_failure_reason(std::string_view text) noexcept {
    for (auto r : {FailureReason::Angle, FailureReason::Range, FailureReason::Damage,
                   FailureReason::Size, FailureReason::Mismatch})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

std::string_view to_string(Technology t) noexcept {
    return t == Technology::Barcode ? "barcode" : "nfc";
}

std::optional<Technology> parse_technology(std::string_view text) noexcept {
    if (text == "barcode") return Technology::Barcode;
    if (text == "nfc") return Technology::Nfc;
    return std::nullopt;
}

int ScanContext::normalize_tilt(int deg) noexcept {
    const int r = deg % 360;
    return r < 0 ? r + 360 : r;
}

int ScanContext::fold_tilt(int deg) noexcept {
    const int t = normalize_tilt(deg);
    return t <= 180 ? t : 360 - t;
}

double nfc_latency_ms(std::size_t payload_bytes) noexcept {
    return link_model::kNfcSetupMs + static_cast<double>(payload_bytes) * 8.0 / link_model::kNfcBitsPerMs;
}

ScanOutcome scan_barcode(const BarcodeLabel& label, const ScanContext& ctx, const ScanConfig& config,
                         std::mt19937_64* rng) {
    if (ctx.reader != ReaderKind::Barcode) return ScanOutcome::fail(FailureReason::Mismatch);

    const double latency = link_model::kBarcodeDecodeMs;
    if (ctx.damage != Damage::None || label.damage() != Damage::None)
        return ScanOutcome::fail(FailureReason::Damage, latency);
    if (ScanContext::fold_tilt(ctx.tilt_deg) > link_model::kBarcodeMaxTiltDeg)
        return ScanOutcome::fail(FailureReason::Angle, latency);

    switch (readability_class(label.width_mm())) {
        case ReadabilityClass::Easy:
            break;
        case ReadabilityClass::Difficult:
            if (config.stochastic) {
                assert(rng != nullptr && "stochastic mode needs a generator");
                std::bernoulli_distribution read(config.difficult_success_probability);
                if (rng == nullptr || !read(*rng)) return ScanOutcome::fail(FailureReason::Size, latency);
            }
            break;
        case ReadabilityClass::VeryDifficult:
            return ScanOutcome::fail(FailureReason::Size, latency);
    }
    return ScanOutcome::ok(latency, label.chars());
}

ScanOutcome scan_nfc(const Type2Tag& tag, const ScanContext& ctx) {
    if (ctx.reader != ReaderKind::Nfc) return ScanOutcome::fail(FailureReason::Mismatch);
    if (!(ctx.distance_cm <= link_model::kNfcRangeCm)) return ScanOutcome::fail(FailureReason::Range);

    // The radio exchange succeeds even if the data area holds no valid frame;
    // interpreting the payload is the consumer's job.
    auto payload = read_tlv(tag);
    Bytes bytes = payload ? std::move(payload).value() : Bytes{};
    const double latency = nfc_latency_ms(bytes.size());
    return ScanOutcome::ok(latency, std::move(bytes));
}

std::vector<SweepRow> sweep_angles(Technology technology, int step_deg) {
    const int step = step_deg < 1 ? 1 : step_deg;
    std::vector<SweepRow> rows;

    if (technology == Technology::Barcode) {
        const BarcodeLabel label(Symbology::Ean8, "96385074");
        const int last = (link_model::kBarcodeSweepEndDeg + step - 1) / step * step;
        for (int angle = 0; angle <= last; angle += step) {
            const ScanContext ctx{angle, 0.0, Damage::None, ReaderKind::Barcode};
            rows.push_back({angle, scan_barcode(label, ctx).success});
        }
    } else {
        Type2Tag tag;
        tag = write_tag(tag, ProductRecord{1, "sweep", 100, 0, 0, 0}).value();
        for (int angle = 0; angle < 360; angle += step) {
            const ScanContext ctx{angle, 4.0, Damage::None, ReaderKind::Nfc};
            rows.push_back({angle, scan_nfc(tag, ctx).success});
        }
    }
    return rows;
}

std::string sweep_csv(Technology technology, const std::vector<SweepRow>& rows) {
    std::string out = "technology,angle_deg,readable\n";
    const std::string tech(to_string(technology));
    for (const auto& row : rows) {
        out += tech;
        out += ',';
        out += std::to_string(row.angle_deg);
        out += row.readable ? ",1\n" : ",0\n";
    }
    return out;
}

}  // namespace invctl
