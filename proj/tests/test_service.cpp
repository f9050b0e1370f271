#include "test_support.hpp"

#include "invctl/json_codec.hpp"
#include "invctl/service.hpp"

#include <doctest.h>
#include <httplib.h>

#include <thread>

using namespace invctl;

namespace {

Json body(const InventoryService::Response& r) { return Json::parse(r.body); }

std::string provision_body(std::uint32_t id, std::uint32_t price, const char* kind) {
    return Json{{"record", to_json(support::product(id, price))}, {"carrier_kind", kind}}.dump();
}

/// Runs an httplib server for the lifetime of the object on an ephemeral port.
class RunningServer {
public:
    explicit RunningServer(InventoryService& service) {
        service.mount(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~RunningServer() {
        server_.stop();
        thread_.join();
    }
    int port() const { return port_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace

TEST_SUITE("service_api") {

TEST_CASE("error mapping is total and stable") {
    CHECK(http_status_for(Errc::AlreadySold) == 409);
    CHECK(http_status_for(Errc::DuplicateSku) == 409);
    CHECK(http_status_for(Errc::UnknownProduct) == 404);
    CHECK(http_status_for(Errc::ImmutableCarrier) == 422);
    CHECK(http_status_for(Errc::TagLocked) == 423);
    CHECK(to_api_error(make_error(Errc::ItemSold, "x")).code == "ItemSold");
    for (int c = 0; c <= static_cast<int>(Errc::IoError); ++c) {
        const auto code = static_cast<Errc>(c);
        const int status = http_status_for(code);
        CHECK(status >= 400);
        if (code != Errc::CorruptLog && code != Errc::IoError) CHECK(status < 500);
    }
}

TEST_CASE("provision, scan, checkout through handlers") {
    Store store(support::stepping_clock());
    InventoryService api(store);

    auto created = api.provision(provision_body(1001, 1999, "NFC"));
    REQUIRE(created.status == 201);
    const std::string uid = body(created)["carrier_ref"];

    CHECK(api.provision(provision_body(1001, 1, "BARCODE")).status == 409);
    CHECK(api.provision("{oops").status == 400);
    CHECK(api.provision(R"({"record":{},"carrier_kind":"NFC"})").status == 400);
    CHECK(api.provision(provision_body(2, 1, "RFID")).status == 400);

    auto scan = api.scan(Json{{"carrier_ref", uid}, {"tilt_deg", 270}, {"distance_cm", 5}, {"damage", "WRINKLED"}}.dump());
    REQUIRE(scan.status == 200);
    const auto s = body(scan);
    CHECK(s["success"] == true);
    CHECK(s["failure_reason"].is_null());
    CHECK(s["latency_ms"].get<double>() > 10.0);
    const std::string token = s["scan_token"];

    auto checkout = api.checkout(Json{{"scan_token", token}}.dump());
    REQUIRE(checkout.status == 200);
    const auto r = body(checkout);
    CHECK(r["total_minor"] == 1999);
    CHECK(r["receipt_id"] == 1);
    CHECK(r["lines"][0]["sku"] == "1001");

    auto again = api.checkout(Json{{"scan_token", token}}.dump());
    CHECK(again.status == 409);
    CHECK(body(again)["code"] == "AlreadySold");

    CHECK(api.receipt("1").status == 200);
    CHECK(api.receipt("2").status == 404);
    CHECK(api.receipt("abc").status == 400);

    auto sold = body(api.list_items(std::string_view("SOLD"), std::nullopt));
    CHECK(sold["items"].size() == 1);
    CHECK(body(api.list_items(std::string_view("IN_STOCK"), std::nullopt))["items"].empty());
    CHECK(api.list_items(std::string_view("GONE"), std::nullopt).status == 400);
}

TEST_CASE("modeled scan failures are 200 responses") {
    Store store(support::stepping_clock());
    InventoryService api(store);
    const std::string ean = body(api.provision(provision_body(4, 100, "BARCODE")))["carrier_ref"];
    const std::string uid = body(api.provision(provision_body(5, 100, "NFC")))["carrier_ref"];

    auto angle = api.scan(Json{{"carrier_ref", ean}, {"tilt_deg", 9}, {"distance_cm", 0}, {"damage", "NONE"}}.dump());
    CHECK(angle.status == 200);
    CHECK(body(angle)["success"] == false);
    CHECK(body(angle)["failure_reason"] == "ANGLE");

    auto damage = api.scan(Json{{"carrier_ref", ean}, {"tilt_deg", 0}, {"damage", "SCRATCHED"}}.dump());
    CHECK(body(damage)["failure_reason"] == "DAMAGE");

    auto range = api.scan(Json{{"carrier_ref", uid}, {"distance_cm", 11}}.dump());
    CHECK(range.status == 200);
    CHECK(body(range)["failure_reason"] == "RANGE");

    auto mismatch = api.scan(Json{{"carrier_ref", uid}, {"reader", "BARCODE_READER"}}.dump());
    CHECK(body(mismatch)["failure_reason"] == "MISMATCH");

    // Checking out a failed read reports the wrapped reason.
    auto failed = api.checkout(Json{{"scan_token", body(angle)["scan_token"]}}.dump());
    CHECK(failed.status == 422);
    CHECK(body(failed)["code"] == "ScanFailed");
    CHECK(body(failed)["message"] == "ANGLE");

    CHECK(api.scan(Json{{"carrier_ref", "nope"}}.dump()).status == 404);
    CHECK(api.scan(Json{{"carrier_ref", ean}, {"damage", "BURNT"}}.dump()).status == 400);
    CHECK(api.scan(Json{{"carrier_ref", ean}, {"distance_cm", -1}}.dump()).status == 400);
    CHECK(api.scan(Json{{"carrier_ref", ean}, {"tilt_deg", 1.5}}.dump()).status == 400);
    CHECK(api.scan("{}").status == 400);
}

TEST_CASE("scan tokens expire after 60 s") {
    support::ManualClock clock;
    Store store(clock.clock());
    ServiceConfig cfg;
    cfg.clock = clock.clock();
    InventoryService api(store, cfg);
    const std::string uid = body(api.provision(provision_body(9, 900, "NFC")))["carrier_ref"];

    const std::string token = body(api.scan(Json{{"carrier_ref", uid}}.dump()))["scan_token"];
    clock.advance(std::chrono::seconds{61});
    auto expired = api.checkout(Json{{"scan_token", token}}.dump());
    CHECK(expired.status == 410);
    CHECK(body(expired)["code"] == "TokenExpired");

    const std::string fresh = body(api.scan(Json{{"carrier_ref", uid}}.dump()))["scan_token"];
    clock.advance(std::chrono::seconds{60});
    CHECK(api.checkout(Json{{"scan_token", fresh}}.dump()).status == 200);

    CHECK(api.checkout(Json{{"scan_token", "deadbeef"}}.dump()).status == 404);
    CHECK(api.checkout("{}").status == 400);
}

TEST_CASE("reprice endpoints") {
    Store store(support::stepping_clock());
    InventoryService api(store);
    api.provision(provision_body(1001, 1999, "NFC"));
    api.provision(provision_body(4, 100, "BARCODE"));

    auto ok = api.reprice("1001", R"({"new_price_minor":1499})");
    REQUIRE(ok.status == 200);
    CHECK(body(ok)["record"]["price_minor"] == 1499);

    auto immutable = api.reprice("4", R"({"new_price_minor":90})");
    CHECK(immutable.status == 422);
    CHECK(body(immutable)["code"] == "ImmutableCarrier");

    auto replaced = api.replace_label("4", R"({"new_price_minor":90})");
    CHECK(replaced.status == 200);
    CHECK(body(replaced)["carrier_revision"] == 1);

    CHECK(api.reprice("1001", R"({"new_price_minor":-5})").status == 400);
    CHECK(api.reprice("1001", R"({"new_price_minor":4294967296})").status == 400);
    CHECK(api.reprice("777", R"({"new_price_minor":1})").status == 404);
}

TEST_CASE("angle sweep CSV") {
    Store store(support::stepping_clock());
    InventoryService api(store);
    auto nfc = api.angle_sweep(std::string_view("nfc"), std::nullopt);
    REQUIRE(nfc.status == 200);
    CHECK(nfc.content_type == "text/csv");
    CHECK(nfc.body == sweep_csv(Technology::Nfc, sweep_angles(Technology::Nfc, 1)));
    CHECK(api.angle_sweep(std::string_view("barcode"), std::string_view("173")).body ==
          "technology,angle_deg,readable\nbarcode,0,1\nbarcode,173,0\n");
    CHECK(api.angle_sweep(std::nullopt, std::nullopt).status == 400);
    CHECK(api.angle_sweep(std::string_view("qr"), std::nullopt).status == 400);
    CHECK(api.angle_sweep(std::string_view("nfc"), std::string_view("0")).status == 400);
}

TEST_CASE("HTTP round trip") {
    Store store(support::stepping_clock());
    InventoryService api(store);
    RunningServer server(api);
    httplib::Client client("127.0.0.1", server.port());

    auto created = client.Post("/api/items", provision_body(42, 4200, "NFC"), "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    const std::string uid = Json::parse(created->body)["carrier_ref"];

    auto scan = client.Post("/api/scan", Json{{"carrier_ref", uid}, {"distance_cm", 3}}.dump(), "application/json");
    REQUIRE(scan);
    const std::string token = Json::parse(scan->body)["scan_token"];

    auto checkout = client.Post("/api/checkout", Json{{"scan_token", token}}.dump(), "application/json");
    REQUIRE(checkout);
    CHECK(checkout->status == 200);

    auto receipt = client.Get("/api/receipts/1");
    REQUIRE(receipt);
    CHECK(Json::parse(receipt->body)["total_minor"] == 4200);

    auto list = client.Get("/api/items?status=SOLD&limit=5");
    REQUIRE(list);
    CHECK(Json::parse(list->body)["items"].size() == 1);

    auto reprice = client.Post("/api/items/42/reprice", R"({"new_price_minor":1})", "application/json");
    REQUIRE(reprice);
    CHECK(reprice->status == 409);

    auto sweep = client.Get("/api/experiments/angle-sweep?technology=nfc");
    REQUIRE(sweep);
    CHECK(sweep->status == 200);
    CHECK(sweep->get_header_value("Content-Type") == "text/csv");

    auto bad = client.Post("/api/scan", "not json", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);
}

}  // TEST_SUITE
