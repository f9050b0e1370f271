// Cashier-station backend: serves the inventory API over HTTP.
//
// Flags can also be given through the environment with an INV_ prefix
// (INV_BIND, INV_DATA_DIR, INV_SEED, INV_DETERMINISTIC).

#include "invctl/service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <iostream>

namespace {

httplib::Server* g_server = nullptr;

void handle_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inventory control service"};

    std::string bind = "127.0.0.1:8080";
    std::string data_dir = "./data";
    std::optional<std::uint64_t> seed;
    bool deterministic = false;
    double difficult_p = 0.5;

    app.add_option("--bind", bind, "host:port to listen on")->envname("INV_BIND");
    app.add_option("--data-dir", data_dir, "Event log and snapshot directory")->envname("INV_DATA_DIR");
    auto* det = app.add_flag("--deterministic", deterministic, "Deterministic scan model (default)")
                    ->envname("INV_DETERMINISTIC");
    app.add_option("--seed", seed, "Enable stochastic scans with this seed")->envname("INV_SEED")->excludes(det);
    app.add_option("--difficult-p", difficult_p, "Read probability for DIFFICULT labels in stochastic mode")
        ->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto colon = bind.rfind(':');
    if (colon == std::string::npos) {
        std::cerr << "error: --bind must be host:port\n";
        return 2;
    }
    const std::string host = bind.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(bind.substr(colon + 1));
    } catch (const std::exception&) {
        std::cerr << "error: bad port in --bind\n";
        return 2;
    }

    auto store = invctl::Store::open(data_dir);
    if (!store) {
        std::cerr << "error: " << invctl::to_string(store.code()) << ": " << store.error().message << "\n";
        return 1;
    }

    invctl::ServiceConfig config;
    config.stochastic = seed.has_value();
    config.seed = seed.value_or(0);
    config.difficult_success_probability = difficult_p;
    invctl::InventoryService service(**store, config);

    httplib::Server server;
    service.mount(server);
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);

    std::cerr << "listening on " << host << ":" << port << " (data in " << data_dir << ", "
              << (config.stochastic ? "stochastic" : "deterministic") << " scans)\n";
    if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << bind << "\n";
        return 1;
    }
    if (auto r = (*store)->write_snapshot(); !r) std::cerr << "warning: " << r.error().message << "\n";
    return 0;
}
