// Reproduces the barcode-vs-NFC readability and latency comparisons as CSV.
//
//   invctl-experiments table2 [--step N] [--out F]
//   invctl-experiments table3 [--out F]
//   invctl-experiments latency [--n N] [--payload-bytes B]
//
// Exit status: 0 on success, 2 on usage errors, 1 on I/O failure.

#include "invctl/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kUsageError = 2;

int emit(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << csv;
        return std::cout ? 0 : 1;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << csv;
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barcode vs NFC readability experiments"};
    app.require_subcommand(1);

    int step = 1;
    std::string table2_out;
    auto* table2 = app.add_subcommand("table2", "Angle readability sweep");
    table2->add_option("--step", step, "Angle step in degrees")->check(CLI::Range(1, 359));
    table2->add_option("--out", table2_out, "Write CSV to file instead of stdout");

    std::string table3_out;
    auto* table3 = app.add_subcommand("table3", "Label size and readability class");
    table3->add_option("--out", table3_out, "Write CSV to file instead of stdout");

    std::size_t items = 1;
    std::size_t payload_bytes = 125;
    auto* latency = app.add_subcommand("latency", "Mean per-item scan latency");
    latency->add_option("--n", items, "Number of items")->check(CLI::Range(std::size_t{1}, std::size_t{1'000'000}));
    latency->add_option("--payload-bytes", payload_bytes, "NFC payload size")
        ->check(CLI::Range(std::size_t{0}, std::size_t{125}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    if (*table2) return emit(invctl::experiments::run_table2(step), table2_out);
    if (*table3) return emit(invctl::experiments::run_table3(), table3_out);

    auto summary = invctl::experiments::run_latency_compare(items, payload_bytes);
    if (!summary) {
        std::cerr << "error: " << summary.error().message << "\n";
        return kUsageError;
    }
    return emit(invctl::experiments::latency_csv(*summary), {});
}
