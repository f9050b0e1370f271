#pragma once

#include "invctl/inventory.hpp"
#include "invctl/scan_sim.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace invctl {

struct ApiError {
    int status = 500;
    std::string code;
    std::string message;
};

/// One (status, code) pair per core error.
int http_status_for(Errc code) noexcept;
ApiError to_api_error(const Error& error);

struct ServiceConfig {
    bool stochastic = false;
    std::uint64_t seed = 0;
    double difficult_success_probability = 0.5;
    std::chrono::milliseconds token_ttl{60'000};
    Clock clock = system_now;
};

/**
 * HTTP/JSON facade over a Store. Handlers are transport independent so they can
 * be driven directly; mount() binds them to an httplib server.
 *
 *   GET  /api/items[?status=IN_STOCK|SOLD&limit=N]
 *   POST /api/items                       {record, carrier_kind}
 *   POST /api/scan                        {carrier_ref, tilt_deg, distance_cm, damage[, reader]}
 *   POST /api/checkout                    {scan_token}
 *   POST /api/items/{sku}/reprice         {new_price_minor}
 *   POST /api/items/{sku}/replace-label   {new_price_minor}
 *   GET  /api/receipts/{id}
 *   GET  /api/experiments/angle-sweep?technology=barcode|nfc[&step=N]
 */
class InventoryService {
public:
    struct Response {
        int status = 200;
        std::string body;
        std::string content_type = "application/json";
    };

    InventoryService(Store& store, ServiceConfig config = {});

    Response list_items(std::optional<std::string_view> status, std::optional<std::string_view> limit) const;
    Response provision(std::string_view body);
    Response scan(std::string_view body);
    Response checkout(std::string_view body);
    Response reprice(std::string_view sku, std::string_view body);
    Response replace_label(std::string_view sku, std::string_view body);
    Response receipt(std::string_view id) const;
    Response angle_sweep(std::optional<std::string_view> technology, std::optional<std::string_view> step) const;

    void mount(httplib::Server& server);

private:
    struct PendingScan {
        ScanOutcome outcome;
        Timestamp issued_at;
    };

    std::string issue_token(const ScanOutcome& outcome);

    Store& store_;
    ServiceConfig config_;

    std::mutex scan_mu_;  // guards the tokens, rng and token generator below
    std::map<std::string, PendingScan> tokens_;
    std::mt19937_64 scan_rng_;
    std::mt19937_64 token_rng_;
};

}  // namespace invctl
