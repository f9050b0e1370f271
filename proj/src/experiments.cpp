#include "invctl/experiments.hpp"

#include "invctl/barcode_codec.hpp"
#include "invctl/scan_sim.hpp"
#include "invctl/tag_codec.hpp"

#include <array>
#include <charconv>

namespace invctl::experiments {

std::string format_fixed2(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 2);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

std::string run_table2(int step_deg) {
    const int step = step_deg < 1 ? 1 : step_deg;
    const BarcodeLabel label(Symbology::Ean8, "96385074");
    Type2Tag tag;
    tag = write_tag(tag, ProductRecord{1, "table2", 100, 0, 0, 0}).value();

    std::string out = "technology,angle_deg,readable,folded\n";
    for (int angle = 0; angle < 360; angle += step) {
        const bool ok = scan_barcode(label, {angle, 0.0, Damage::None, ReaderKind::Barcode}).success;
        const bool folded = angle > link_model::kBarcodeSweepEndDeg;
        out += "barcode," + std::to_string(angle) + (ok ? ",1" : ",0") + (folded ? ",1\n" : ",0\n");
    }
    for (int angle = 0; angle < 360; angle += step) {
        const bool ok = scan_nfc(tag, {angle, 4.0, Damage::None, ReaderKind::Nfc}).success;
        out += "nfc," + std::to_string(angle) + (ok ? ",1" : ",0") + ",0\n";
    }
    return out;
}

std::string run_table3() {
    std::string out = "technology,char_count,size_mm,readability\n";
    for (int n : {8, 12, 20, 30}) {
        const double mm = width_model(n).value();
        out += "barcode," + std::to_string(n) + "," + format_fixed2(mm) + "," +
               std::string(to_string(readability_class(mm))) + "\n";
    }
    // Tag footprint does not depend on stored bytes.
    for (int n : {8, 20, 128}) {
        out += "nfc," + std::to_string(n) + "," + format_fixed2(kNfcTagFootprintMm) + "," +
               std::string(to_string(readability_class(kNfcTagFootprintMm))) + "\n";
    }
    return out;
}

Result<LatencySummary> run_latency_compare(std::size_t items, std::size_t nfc_payload_bytes) {
    if (items == 0) return make_error(Errc::OutOfRange, "need at least one item");
    if (nfc_payload_bytes > Type2Tag::kMaxPayload)
        return make_error(Errc::CapacityExceeded, "payload larger than the tag data area allows");

    LatencySummary summary;
    summary.items = items;
    summary.nfc_payload_bytes = nfc_payload_bytes;
    summary.barcode_chars = 13;

    double nfc_total = 0.0;
    double barcode_total = 0.0;
    Bytes payload(nfc_payload_bytes);
    for (std::size_t i = 0; i < items; ++i) {
        for (std::size_t k = 0; k < payload.size(); ++k) payload[k] = static_cast<std::uint8_t>(i + k);
        Type2Tag tag;
        tag.uid = {0x04, 0, 0, 0, 0, 0, static_cast<std::uint8_t>(i)};
        tag = write_tlv(tag, payload).value();
        nfc_total += scan_nfc(tag, {0, 4.0, Damage::None, ReaderKind::Nfc}).latency_ms;

        const BarcodeLabel label(Symbology::Ean13, ean13_for_product(static_cast<std::uint32_t>(i + 1)));
        barcode_total += scan_barcode(label, {0, 0.0, Damage::None, ReaderKind::Barcode}).latency_ms;
    }
    summary.nfc_mean_ms = nfc_total / static_cast<double>(items);
    summary.barcode_mean_ms = barcode_total / static_cast<double>(items);
    return summary;
}

std::string latency_csv(const LatencySummary& s) {
    std::string out = "technology,items,payload_bytes,mean_latency_ms\n";
    out += "nfc," + std::to_string(s.items) + "," + std::to_string(s.nfc_payload_bytes) + "," +
           format_fixed2(s.nfc_mean_ms) + "\n";
    out += "barcode," + std::to_string(s.items) + "," + std::to_string(s.barcode_chars) + "," +
           format_fixed2(s.barcode_mean_ms) + "\n";
    return out;
}

}  // namespace invctl::experiments
