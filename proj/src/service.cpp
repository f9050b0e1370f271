#include "invctl/service.hpp"

#include "invctl/json_codec.hpp"

#include <httplib.h>

#include <charconv>
#include <cmath>
#include <cstdio>

namespace invctl {

namespace {

using Response = InventoryService::Response;

Response json_response(int status, const Json& body) { return {status, body.dump(), "application/json"}; }

Response error_response(const ApiError& e) {
    return json_response(e.status, Json{{"status", e.status}, {"code", e.code}, {"message", e.message}});
}

Response error_response(const Error& e) { return error_response(to_api_error(e)); }

Response bad_request(std::string message) { return error_response(ApiError{400, "BadRequest", std::move(message)}); }

std::optional<Json> parse_body(std::string_view body) {
    Json j = Json::parse(body.begin(), body.end(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
    T value{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<std::uint32_t> price_field(const Json& j) {
    if (!j.contains("new_price_minor") || !j["new_price_minor"].is_number_unsigned()) return std::nullopt;
    const auto v = j["new_price_minor"].get<std::uint64_t>();
    if (v > std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
    return static_cast<std::uint32_t>(v);
}

std::optional<std::string> param(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
}

std::optional<std::string_view> view(const std::optional<std::string>& s) {
    if (!s) return std::nullopt;
    return std::string_view(*s);
}

void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type.c_str());
}

}  // namespace

int http_status_for(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidName:
        case Errc::InvalidDates:
        case Errc::CapacityExceeded:
        case Errc::InvalidCharacter:
        case Errc::WrongLength:
        case Errc::NonDigit:
        case Errc::OutOfRange:
        case Errc::InvalidLabel:
            return 400;
        case Errc::UnknownProduct:
        case Errc::UnknownCarrier:
            return 404;
        case Errc::DuplicateSku:
        case Errc::AlreadySold:
        case Errc::ItemSold:
            return 409;
        case Errc::BadVersion:
        case Errc::Truncated:
        case Errc::TrailingGarbage:
        case Errc::BlankTag:
        case Errc::MalformedTlv:
        case Errc::ScanFailed:
        case Errc::MalformedPayload:
        case Errc::ImmutableCarrier:
            return 422;
        case Errc::TagLocked:
            return 423;
        case Errc::CorruptLog:
        case Errc::IoError:
            return 500;
    }
    return 500;
}

ApiError to_api_error(const Error& error) {
    return ApiError{http_status_for(error.code), std::string(to_string(error.code)), error.message};
}

InventoryService::InventoryService(Store& store, ServiceConfig config)
    : store_(store), config_(std::move(config)), scan_rng_(config_.seed), token_rng_(std::random_device{}()) {}

Response InventoryService::list_items(std::optional<std::string_view> status,
                                      std::optional<std::string_view> limit) const {
    std::optional<ItemStatus> filter;
    if (status) {
        filter = parse_item_status(*status);
        if (!filter) return bad_request("status must be IN_STOCK or SOLD");
    }
    std::optional<std::size_t> max_items;
    if (limit) {
        max_items = parse_number<std::size_t>(*limit);
        if (!max_items) return bad_request("limit must be a non-negative integer");
    }
    Json items = Json::array();
    for (const auto& item : store_.items(filter)) {
        if (max_items && items.size() >= *max_items) break;
        items.push_back(to_json(item));
    }
    return json_response(200, Json{{"items", std::move(items)}});
}

Response InventoryService::provision(std::string_view body) {
    auto j = parse_body(body);
    if (!j) return bad_request("body must be a JSON object");
    if (!j->contains("record") || !j->contains("carrier_kind") || !(*j)["carrier_kind"].is_string())
        return bad_request("expected {record, carrier_kind}");
    auto kind = parse_carrier_kind((*j)["carrier_kind"].get<std::string>());
    if (!kind) return bad_request("carrier_kind must be NFC or BARCODE");
    auto record = record_from_json((*j)["record"]);
    if (!record) return error_response(record.error());

    auto item = store_.provision(*record, *kind);
    if (!item) return error_response(item.error());
    return json_response(201, to_json(*item));
}

std::string InventoryService::issue_token(const ScanOutcome& outcome) {
    const auto now = config_.clock();
    // Forget tokens long past expiry; recently expired ones still answer 410.
    std::erase_if(tokens_, [&](const auto& kv) { return now - kv.second.issued_at > config_.token_ttl * 10; });

    char buf[33];
    std::string token;
    do {
        std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(token_rng_()),
                      static_cast<unsigned long long>(token_rng_()));
        token = buf;
    } while (tokens_.contains(token));
    tokens_.emplace(token, PendingScan{outcome, now});
    return token;
}

Response InventoryService::scan(std::string_view body) {
    auto j = parse_body(body);
    if (!j) return bad_request("body must be a JSON object");
    if (!j->contains("carrier_ref") || !(*j)["carrier_ref"].is_string())
        return bad_request("carrier_ref is required");
    const std::string ref = (*j)["carrier_ref"].get<std::string>();

    ScanContext ctx;
    if (j->contains("tilt_deg")) {
        if (!(*j)["tilt_deg"].is_number_integer()) return bad_request("tilt_deg must be an integer");
        ctx.tilt_deg = ScanContext::normalize_tilt(static_cast<int>((*j)["tilt_deg"].get<long long>() % 360));
    }
    if (j->contains("distance_cm")) {
        if (!(*j)["distance_cm"].is_number()) return bad_request("distance_cm must be a number");
        ctx.distance_cm = (*j)["distance_cm"].get<double>();
        if (!std::isfinite(ctx.distance_cm) || ctx.distance_cm < 0)
            return bad_request("distance_cm must be finite and non-negative");
    }
    if (j->contains("damage")) {
        auto d = (*j)["damage"].is_string() ? parse_damage((*j)["damage"].get<std::string>()) : std::nullopt;
        if (!d) return bad_request("damage must be NONE, SCRATCHED or WRINKLED");
        ctx.damage = *d;
    }

    auto carrier = store_.carrier(ref);
    if (!carrier) return error_response(carrier.error());
    const bool is_tag = std::holds_alternative<Type2Tag>(*carrier);
    ctx.reader = is_tag ? ReaderKind::Nfc : ReaderKind::Barcode;
    if (j->contains("reader")) {
        const auto& r = (*j)["reader"];
        if (r == "NFC_READER")
            ctx.reader = ReaderKind::Nfc;
        else if (r == "BARCODE_READER")
            ctx.reader = ReaderKind::Barcode;
        else
            return bad_request("reader must be NFC_READER or BARCODE_READER");
    }

    std::lock_guard lock(scan_mu_);
    ScanOutcome outcome;
    if (is_tag) {
        outcome = scan_nfc(std::get<Type2Tag>(*carrier), ctx);
    } else {
        const ScanConfig cfg{config_.stochastic, config_.difficult_success_probability};
        outcome = scan_barcode(std::get<BarcodeLabel>(*carrier), ctx, cfg, &scan_rng_);
    }
    Json out = to_json(outcome);
    out["carrier_ref"] = ref;
    out["scan_token"] = issue_token(outcome);
    return json_response(200, out);
}

Response InventoryService::checkout(std::string_view body) {
    auto j = parse_body(body);
    if (!j) return bad_request("body must be a JSON object");
    if (!j->contains("scan_token") || !(*j)["scan_token"].is_string())
        return bad_request("scan_token is required");
    const std::string token = (*j)["scan_token"].get<std::string>();

    ScanOutcome outcome;
    {
        std::lock_guard lock(scan_mu_);
        auto it = tokens_.find(token);
        if (it == tokens_.end()) return error_response(ApiError{404, "UnknownToken", "no such scan token"});
        if (config_.clock() - it->second.issued_at > config_.token_ttl)
            return error_response(ApiError{410, "TokenExpired", "scan token expired; scan again"});
        outcome = it->second.outcome;
    }
    auto receipt = store_.checkout(outcome);
    if (!receipt) return error_response(receipt.error());
    return json_response(200, to_json(*receipt));
}

Response InventoryService::reprice(std::string_view sku, std::string_view body) {
    auto j = parse_body(body);
    if (!j) return bad_request("body must be a JSON object");
    auto price = price_field(*j);
    if (!price) return bad_request("new_price_minor must be an unsigned 32-bit integer");
    auto item = store_.reprice(sku, *price);
    if (!item) return error_response(item.error());
    return json_response(200, to_json(*item));
}

Response InventoryService::replace_label(std::string_view sku, std::string_view body) {
    auto j = parse_body(body);
    if (!j) return bad_request("body must be a JSON object");
    auto price = price_field(*j);
    if (!price) return bad_request("new_price_minor must be an unsigned 32-bit integer");
    auto item = store_.replace_label(sku, *price);
    if (!item) return error_response(item.error());
    return json_response(200, to_json(*item));
}

Response InventoryService::receipt(std::string_view id) const {
    auto n = parse_number<std::uint64_t>(id);
    if (!n) return bad_request("receipt id must be an integer");
    auto r = store_.receipt(*n);
    if (!r) return error_response(ApiError{404, "NotFound", "no receipt " + std::string(id)});
    return json_response(200, to_json(*r));
}

Response InventoryService::angle_sweep(std::optional<std::string_view> technology,
                                       std::optional<std::string_view> step) const {
    if (!technology) return bad_request("technology is required");
    auto tech = parse_technology(*technology);
    if (!tech) return bad_request("technology must be barcode or nfc");
    int step_deg = 1;
    if (step) {
        auto s = parse_number<int>(*step);
        if (!s || *s < 1) return bad_request("step must be a positive integer");
        step_deg = *s;
    }
    return {200, sweep_csv(*tech, sweep_angles(*tech, step_deg)), "text/csv"};
}

void InventoryService::mount(httplib::Server& server) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/items", [this](const httplib::Request& req, httplib::Response& res) {
        const auto status = param(req, "status");
        const auto limit = param(req, "limit");
        send(res, list_items(view(status), view(limit)));
    });
    server.Post("/api/items", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, provision(req.body));
    });
    server.Post("/api/scan", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, scan(req.body));
    });
    server.Post("/api/checkout", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, checkout(req.body));
    });
    server.Post(R"(/api/items/([^/]+)/reprice)", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, reprice(req.matches[1].str(), req.body));
    });
    server.Post(R"(/api/items/([^/]+)/replace-label)",
                [this](const httplib::Request& req, httplib::Response& res) {
                    send(res, replace_label(req.matches[1].str(), req.body));
                });
    server.Get(R"(/api/receipts/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, receipt(req.matches[1].str()));
    });
    server.Get("/api/experiments/angle-sweep", [this](const httplib::Request& req, httplib::Response& res) {
        const auto technology = param(req, "technology");
        const auto step = param(req, "step");
        send(res, angle_sweep(view(technology), view(step)));
    });
}

}  // namespace invctl
