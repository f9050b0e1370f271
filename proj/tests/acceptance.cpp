// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: invctl-acceptance <golden-dir> <path-to-invctl-experiments>

#include "generators.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include "invctl/barcode_codec.hpp"
#include "invctl/event_log.hpp"
#include "invctl/json_codec.hpp"
#include "invctl/scan_sim.hpp"
#include "invctl/service.hpp"
#include "invctl/tag_codec.hpp"

#include <httplib.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

using namespace invctl;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool pass = true;
    std::string detail;
    void fail(std::string why) {
        if (pass) detail = std::move(why);
        pass = false;
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs a command and captures stdout; returns {exit status, output}.
std::pair<int, std::string> run(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Check table2(const fs::path& golden, const std::string& cli) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    auto [code, out] = run("'" + cli + "' table2");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (code != 0) c.fail("exit " + std::to_string(code));
    if (out != read_file(golden / "table2.csv")) c.fail("output differs from golden");
    if (secs >= 1.0) c.fail("runtime " + std::to_string(secs) + " s");

    // Independent of the golden file: readable exactly at 0..8, not at 9..172.
    for (int a = 0; a <= 172; ++a) {
        const bool expect = a <= 8;
        const std::string row = "barcode," + std::to_string(a) + "," + (expect ? "1" : "0") + ",0\n";
        if (out.find(row) == std::string::npos) c.fail("barcode row " + std::to_string(a));
    }
    for (int a = 0; a < 360; ++a)
        if (out.find("nfc," + std::to_string(a) + ",1,") == std::string::npos) c.fail("nfc row " + std::to_string(a));
    if (c.pass) c.detail = "golden match, " + std::to_string(static_cast<int>(secs * 1000)) + " ms";
    return c;
}

Check table3(const fs::path& golden, const std::string& cli) {
    Check c;
    auto [code, out] = run("'" + cli + "' table3");
    if (code != 0) c.fail("exit " + std::to_string(code));
    if (out != read_file(golden / "table3.csv")) c.fail("output differs from golden");
    if (c.pass) c.detail = "golden match";
    return c;
}

Check codec_round_trip() {
    Check c;
    std::mt19937_64 rng(0xC0DEC);
    for (int i = 0; i < 10'000 && c.pass; ++i) {
        const auto rec = gen::record(rng);
        auto tag = write_tag(Type2Tag{}, rec);
        if (!tag) {
            c.fail("write_tag rejected record " + std::to_string(i));
            break;
        }
        auto back = read_tag(*tag);
        if (!back || *back != rec) c.fail("round trip mismatch at " + std::to_string(i));
    }
    // Fuzz: arbitrary tag contents, plus mutations of valid frames.
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> pos(0, Type2Tag::capacity_bytes - 1);
    std::size_t decoded = 0;
    for (int i = 0; i < 10'000; ++i) {
        Type2Tag tag;
        if (i % 2 == 0) {
            for (auto& b : tag.data) b = static_cast<std::uint8_t>(byte(rng));
            if (i % 4 == 0) tag.data[0] = Type2Tag::kNdefTlv;
        } else {
            tag = write_tag(Type2Tag{}, gen::record(rng)).value();
            const int flips = 1 + i % 5;
            for (int f = 0; f < flips; ++f) tag.data[pos(rng)] = static_cast<std::uint8_t>(byte(rng));
        }
        auto r = read_tag(tag);
        if (r) {
            ++decoded;
            if (!validate_record(*r)) c.fail("read_tag returned an invalid record");
        }
    }
    if (c.pass) c.detail = "10000 round trips, 10000 fuzzed tags (" + std::to_string(decoded) + " decoded)";
    return c;
}

Check checksums() {
    Check c;
    std::mt19937_64 rng(0xEA17);
    for (int i = 0; i < 10'000; ++i) {
        const std::string payload = oracle::random_digits(rng, i % 2 ? 12 : 7);
        auto d = ean_check_digit(payload);
        if (!d || *d != oracle::ean_check_brute_force(payload)) c.fail("check digit mismatch for " + payload);
    }
    std::size_t mutations = 0;
    for (int i = 0; i < 100; ++i) {
        const std::string payload = oracle::random_digits(rng, 12);
        const std::string code = payload + static_cast<char>('0' + oracle::ean_check_brute_force(payload));
        if (!validate(Symbology::Ean13, code).valid) c.fail("valid code rejected: " + code);
        for (std::size_t p = 0; p < code.size(); ++p) {
            for (char d = '0'; d <= '9'; ++d) {
                if (d == code[p]) continue;
                std::string m = code;
                m[p] = d;
                ++mutations;
                if (validate(Symbology::Ean13, m).valid) c.fail("mutation accepted: " + m);
            }
        }
    }
    int sum = 0;
    for (char ch : std::string("HELLO")) sum += oracle::code39_value(ch);
    const char hand = oracle::code39_char(sum % 43);
    auto got = code39_check_char("HELLO");
    if (hand != 'B' || !got || *got != 'B') c.fail("HELLO check char");
    if (c.pass) c.detail = "10000 payloads, " + std::to_string(mutations) + " mutations rejected, HELLO -> B";
    return c;
}

Check latency() {
    Check c;
    const double expected = oracle::nfc_latency_ms(125);
    const double model = nfc_latency_ms(125);
    auto tag = write_tlv(Type2Tag{}, Bytes(125, 0x41)).value();
    const auto outcome = scan_nfc(tag, {0, 1.0, Damage::None, ReaderKind::Nfc});
    for (double v : {model, outcome.latency_ms})
        if (std::fabs(v - 12.358) > 0.001 || std::fabs(v - expected) > 1e-9) c.fail("latency " + std::to_string(v));
    if (c.pass) c.detail = std::to_string(outcome.latency_ms) + " ms";
    return c;
}

Check state_machine() {
    Check c;
    support::TempDir dir;
    std::vector<std::string> observed;
    std::string live_snapshot;
    {
        auto store = Store::open(dir.path(), support::stepping_clock()).value();
        auto item = store->provision(support::product(1001, 1999, "Milk"), CarrierKind::Nfc).value();
        auto scan = support::ideal_scan(*store, item);
        auto receipt = store->checkout(scan);
        observed.push_back(receipt ? std::string("Receipt") : std::string(to_string(receipt.code())));
        auto rescan = store->checkout(support::ideal_scan(*store, item));
        observed.push_back(rescan ? std::string("Receipt") : std::string(to_string(rescan.code())));
        auto reprice = store->reprice(item.sku, 1499);
        observed.push_back(reprice ? std::string("Item") : std::string(to_string(reprice.code())));
        live_snapshot = store->snapshot();
        if (receipt && receipt->total_minor != 1999) c.fail("receipt total");
    }
    const std::vector<std::string> expected{"Receipt", "AlreadySold", "ItemSold"};
    if (observed != expected) {
        std::string got;
        for (const auto& s : observed) got += s + " ";
        c.fail("sequence: " + got);
    }
    auto events = read_event_log(dir.path() / "events.jsonl");
    if (!events) {
        c.fail("log unreadable");
        return c;
    }
    auto replayed = replay(*events);
    if (!replayed) {
        c.fail("replay failed");
        return c;
    }
    const std::string replay_snapshot = snapshot_to_json(*replayed).dump(2) + "\n";
    auto reopened = Store::open(dir.path(), support::stepping_clock()).value();
    if (replay_snapshot != live_snapshot) c.fail("replayed snapshot differs");
    if (reopened->snapshot() != live_snapshot) c.fail("reopened snapshot differs");
    if (c.pass) c.detail = "Receipt, AlreadySold, ItemSold; snapshot identical after replay";
    return c;
}

Check no_double_sale() {
    Check c;
    Store store(support::stepping_clock());
    InventoryService api(store);
    httplib::Server server;
    api.mount(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string created = api.provision(
        Json{{"record", to_json(support::product(7, 700))}, {"carrier_kind", "NFC"}}.dump()).body;
    const std::string uid = Json::parse(created)["carrier_ref"];
    std::vector<std::string> tokens;
    for (int i = 0; i < 32; ++i)
        tokens.push_back(Json::parse(api.scan(Json{{"carrier_ref", uid}}.dump()).body)["scan_token"]);

    std::vector<int> status(32, 0);
    std::vector<std::string> codes(32);
    std::vector<std::thread> clients;
    std::atomic<int> ready{0};
    for (int i = 0; i < 32; ++i) {
        clients.emplace_back([&, i] {
            httplib::Client client("127.0.0.1", port);
            client.set_read_timeout(10, 0);
            ++ready;
            while (ready.load() < 32) std::this_thread::yield();
            auto res = client.Post("/api/checkout", Json{{"scan_token", tokens[i]}}.dump(), "application/json");
            if (!res) {
                codes[i] = httplib::to_string(res.error());
                return;
            }
            status[i] = res->status;
            auto body = Json::parse(res->body, nullptr, false);
            if (body.is_object() && body.contains("code")) codes[i] = body["code"].get<std::string>();
        });
    }
    for (auto& t : clients) t.join();
    server.stop();
    listener.join();

    int ok = 0, sold = 0;
    for (int i = 0; i < 32; ++i) {
        if (status[i] == 200) ++ok;
        else if (status[i] == 409 && codes[i] == "AlreadySold") ++sold;
    }
    if (ok != 1 || sold != 31) {
        std::string other;
        for (int i = 0; i < 32; ++i)
            if (status[i] != 200 && status[i] != 409) other += " [" + std::to_string(status[i]) + " " + codes[i] + "]";
        c.fail(std::to_string(ok) + " x 200, " + std::to_string(sold) + " x AlreadySold" + other);
    }
    if (store.receipt(2)) c.fail("second receipt exists");
    if (c.pass) c.detail = "1 x 200, 31 x 409 AlreadySold";
    return c;
}

Check damage_contrast() {
    Check c;
    std::mt19937_64 rng(0xDA4A6E);
    std::uniform_int_distribution<int> tilt(0, 359);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    std::uniform_int_distribution<std::uint32_t> id(0, 99'999'999);
    std::uniform_int_distribution<int> sym(0, 2);
    int barcode_ok = 0, nfc_fail = 0;
    for (int i = 0; i < 1000; ++i) {
        const ScanContext ctx{tilt(rng), dist(rng), Damage::Scratched, ReaderKind::Barcode};
        BarcodeLabel label = [&] {
            switch (sym(rng)) {
                case 0: return make_label(Symbology::Ean13, ean13_for_product(id(rng))).value();
                case 1: {
                    const std::string p = oracle::random_digits(rng, 7);
                    return make_label(Symbology::Ean8, p + static_cast<char>('0' + oracle::ean_check_brute_force(p)))
                        .value();
                }
                default: return make_label(Symbology::Code39, oracle::random_digits(rng, 1 + i % 30)).value();
            }
        }();
        if (scan_barcode(label, ctx).success) ++barcode_ok;

        auto tag = write_tag(Type2Tag{}, gen::record(rng)).value();
        ScanContext nctx = ctx;
        nctx.reader = ReaderKind::Nfc;
        if (!scan_nfc(tag, nctx).success) ++nfc_fail;
    }
    if (barcode_ok != 0) c.fail(std::to_string(barcode_ok) + " scratched barcode reads succeeded");
    if (nfc_fail != 0) c.fail(std::to_string(nfc_fail) + " scratched NFC reads failed");
    if (c.pass) c.detail = "1000 cases: barcode 0 reads, NFC 1000 reads";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: invctl-acceptance <golden-dir> <invctl-experiments>\n";
        return 2;
    }
    const fs::path golden = argv[1];
    const std::string cli = argv[2];

    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"table2_reproduction", [&] { return table2(golden, cli); }},
        {"table3_reproduction", [&] { return table3(golden, cli); }},
        {"codec_round_trip_property", codec_round_trip},
        {"checksum_oracles", checksums},
        {"nfc_latency_model", latency},
        {"sale_state_machine_and_replay", state_machine},
        {"no_double_sale_32_concurrent", no_double_sale},
        {"scratched_damage_contrast", damage_contrast},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        if (!c.pass) ++failed;
        std::cout << (c.pass ? "PASS " : "FAIL ") << name << ": " << c.detail << "\n";
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
