#pragma once

#include "invctl/result.hpp"

#include <cstddef>
#include <string>

namespace invctl::experiments {

/// Fixed-point decimal with two places, independent of the global locale.
std::string format_fixed2(double value);

/// Angle readability for both technologies over [0, 360) in `step_deg` steps.
/// Header `technology,angle_deg,readable,folded`; barcode rows past the last
/// measured angle (172) are model extrapolations and carry folded=1.
std::string run_table2(int step_deg = 1);

/// Size and readability class by character count.
/// Header `technology,char_count,size_mm,readability`.
std::string run_table3();

struct LatencySummary {
    std::size_t items = 0;
    std::size_t nfc_payload_bytes = 0;
    std::size_t barcode_chars = 0;
    double nfc_mean_ms = 0.0;
    double barcode_mean_ms = 0.0;
};

/// Scans `items` NFC tags (each holding `nfc_payload_bytes` of TLV payload)
/// and `items` EAN-13 labels under the deterministic model.
Result<LatencySummary> run_latency_compare(std::size_t items, std::size_t nfc_payload_bytes = 125);

/// Header `technology,items,payload_bytes,mean_latency_ms`.
std::string latency_csv(const LatencySummary& summary);

}  // namespace invctl::experiments
