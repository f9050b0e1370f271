#pragma once

#include "invctl/barcode_codec.hpp"
#include "invctl/result.hpp"
#include "invctl/scan_sim.hpp"
#include "invctl/tag_codec.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace invctl {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;
using Clock = std::function<Timestamp()>;

/// Wall clock truncated to milliseconds.
Timestamp system_now();

enum class CarrierKind { Nfc, Barcode };
enum class ItemStatus { InStock, Sold };
enum class EventKind { Provisioned, Sold, Repriced };

std::string_view to_string(CarrierKind k) noexcept;
std::string_view to_string(ItemStatus s) noexcept;
std::string_view to_string(EventKind k) noexcept;
std::optional<CarrierKind> parse_carrier_kind(std::string_view text) noexcept;
std::optional<ItemStatus> parse_item_status(std::string_view text) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

struct InventoryItem {
    std::string sku;
    ProductRecord record;  // price_minor here is the authoritative store price
    CarrierKind carrier_kind = CarrierKind::Nfc;
    std::string carrier_ref;  // tag UID hex or EAN-13 digits
    /// Times the carrier content was rewritten (NFC) or the label reprinted (barcode).
    std::uint32_t carrier_revision = 0;
    ItemStatus status = ItemStatus::InStock;
    std::optional<Timestamp> sold_at;

    bool operator==(const InventoryItem&) const = default;
};

struct ReceiptLine {
    std::string sku;
    std::string name;
    std::uint32_t price_minor = 0;

    bool operator==(const ReceiptLine&) const = default;
};

struct Receipt {
    std::uint64_t receipt_id = 0;
    std::vector<ReceiptLine> lines;
    std::uint64_t total_minor = 0;
    Timestamp issued_at{};

    bool operator==(const Receipt&) const = default;
};

struct ProvisionedEvent {
    std::string sku;
    ProductRecord record;
    CarrierKind carrier_kind = CarrierKind::Nfc;
    std::string carrier_ref;

    bool operator==(const ProvisionedEvent&) const = default;
};

struct SoldEvent {
    std::string sku;
    std::uint64_t receipt_id = 0;
    std::uint32_t price_minor = 0;

    bool operator==(const SoldEvent&) const = default;
};

struct RepricedEvent {
    std::string sku;
    std::uint32_t new_price_minor = 0;
    bool label_replaced = false;

    bool operator==(const RepricedEvent&) const = default;
};

struct StoreEvent {
    using Payload = std::variant<ProvisionedEvent, SoldEvent, RepricedEvent>;

    std::uint64_t seq = 0;
    Timestamp ts{};
    Payload payload;

    [[nodiscard]] EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }
    bool operator==(const StoreEvent&) const = default;
};

/// A physical carrier as held by the store.
using CarrierView = std::variant<Type2Tag, BarcodeLabel>;

/// Pure store state. Every change goes through apply(), both live and on replay.
struct StoreState {
    std::map<std::string, InventoryItem> items;
    std::map<std::string, Type2Tag> tags;        // by UID hex
    std::map<std::string, BarcodeLabel> labels;  // by EAN-13
    std::map<std::string, std::string> carrier_index;  // carrier_ref -> sku
    std::map<std::uint64_t, Receipt> receipts;
    std::uint64_t next_receipt_id = 1;
    std::uint64_t last_seq = 0;

    /// Applies one event; rejects anything that breaks the state machine with CorruptLog.
    Result<void> apply(const StoreEvent& event);

    [[nodiscard]] std::size_t count(ItemStatus status) const;
};

/// Rebuilds state from an event sequence that must be gap-free from 1.
Result<StoreState> replay(std::span<const StoreEvent> events);

std::string sku_for(std::uint32_t product_id);

/// UID for the n-th minted tag (n >= 1): 0x04 followed by n as 48-bit big-endian.
TagUid mint_uid(std::uint64_t n);

/**
 * Catalog, stock and checkout. All mutations are serialized under one writer
 * lock and recorded as events; reads take a shared lock and return copies.
 *
 * When opened on a data directory, events are appended to `events.jsonl` and
 * a snapshot is rewritten to `snapshot.json` every `snapshot_every` events.
 */
class Store {
public:
    explicit Store(Clock clock = system_now);
    ~Store();

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    /// Replays `dir/events.jsonl` (if any) and keeps appending to it.
    static Result<std::unique_ptr<Store>> open(const std::filesystem::path& dir,
                                               Clock clock = system_now,
                                               std::size_t snapshot_every = 100);

    Result<InventoryItem> provision(const ProductRecord& record, CarrierKind carrier_kind);
    Result<Receipt> checkout(const ScanOutcome& scan);
    Result<InventoryItem> reprice(std::string_view sku, std::uint32_t new_price_minor);
    /// Barcode-only: retires the printed label and issues a replacement at the new price.
    Result<InventoryItem> replace_label(std::string_view sku, std::uint32_t new_price_minor);
    /// Physical write-protect on an NFC tag. Not an event; not part of snapshots.
    Result<void> set_tag_locked(std::string_view sku, bool locked);

    [[nodiscard]] std::vector<InventoryItem> items(std::optional<ItemStatus> status = std::nullopt) const;
    [[nodiscard]] std::optional<InventoryItem> item(std::string_view sku) const;
    [[nodiscard]] std::optional<Receipt> receipt(std::uint64_t id) const;
    [[nodiscard]] Result<CarrierView> carrier(std::string_view carrier_ref) const;
    [[nodiscard]] std::vector<StoreEvent> events() const;
    [[nodiscard]] StoreState state() const;
    [[nodiscard]] std::string snapshot() const;

    /// Writes snapshot.json now (no-op without a data directory).
    Result<void> write_snapshot() const;

private:
    class Journal;

    Result<void> commit(StoreEvent::Payload payload);
    Result<const InventoryItem*> lookup_for_update(std::string_view sku) const;

    mutable std::shared_mutex mu_;
    StoreState state_;
    std::vector<StoreEvent> events_;
    Clock clock_;
    std::unique_ptr<Journal> journal_;
};

}  // namespace invctl
