#include "invctl/inventory.hpp"

#include "invctl/event_log.hpp"
#include "invctl/json_codec.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <mutex>

namespace invctl {

namespace {

Error corrupt(std::uint64_t seq, std::string message) {
    return make_error(Errc::CorruptLog, "event " + std::to_string(seq) + ": " + std::move(message));
}

/// Product id carried by a successful scan's payload.
Result<std::uint32_t> product_id_from_payload(const ScanPayload& payload) {
    if (const auto* bytes = std::get_if<Bytes>(&payload)) {
        auto record = decode_record(*bytes);
        if (!record)
            return make_error(Errc::MalformedPayload, "tag payload: " + record.error().message);
        return record->product_id;
    }
    if (const auto* text = std::get_if<std::string>(&payload)) {
        if (!validate(Symbology::Ean13, *text))
            return make_error(Errc::MalformedPayload, "barcode payload is not a valid EAN-13");
        std::uint64_t id = 0;
        std::from_chars(text->data(), text->data() + 12, id);
        if (id > std::numeric_limits<std::uint32_t>::max())
            return make_error(Errc::UnknownProduct, "barcode " + *text + " is not a store product");
        return static_cast<std::uint32_t>(id);
    }
    return make_error(Errc::MalformedPayload, "scan carried no payload");
}

}  // namespace

Timestamp system_now() {
    return std::chrono::floor<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

std::string_view to_string(CarrierKind k) noexcept { return k == CarrierKind::Nfc ? "NFC" : "BARCODE"; }

std::string_view to_string(ItemStatus s) noexcept {
    return s == ItemStatus::InStock ? "IN_STOCK" : "SOLD";
}

std::string_view to_string(EventKind k) noexcept {
    switch (k) {
        case EventKind::Provisioned: return "PROVISIONED";
        case EventKind::Sold: return "SOLD";
        case EventKind::Repriced: return "REPRICED";
    }
    return "?";
}

std::optional<CarrierKind> parse_carrier_kind(std::string_view text) noexcept {
    if (text == "NFC") return CarrierKind::Nfc;
    if (text == "BARCODE") return CarrierKind::Barcode;
    return std::nullopt;
}

std::optional<ItemStatus> parse_item_status(std::string_view text) noexcept {
    if (text == "IN_STOCK") return ItemStatus::InStock;
    if (text == "SOLD") return ItemStatus::Sold;
    return std::nullopt;
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
    for (auto k : {EventKind::Provisioned, EventKind::Sold, EventKind::Repriced})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

std::string sku_for(std::uint32_t product_id) { return std::to_string(product_id); }

TagUid mint_uid(std::uint64_t n) {
    TagUid uid{};
    uid[0] = 0x04;
    for (int i = 6; i >= 1; --i) {
        uid[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n & 0xFF);
        n >>= 8;
    }
    return uid;
}

// ---------------------------------------------------------------------------
// StoreState

std::size_t StoreState::count(ItemStatus status) const {
    return static_cast<std::size_t>(std::count_if(
        items.begin(), items.end(), [status](const auto& kv) { return kv.second.status == status; }));
}

Result<void> StoreState::apply(const StoreEvent& event) {
    const auto seq = event.seq;
    if (seq != last_seq + 1)
        return corrupt(seq, "expected sequence " + std::to_string(last_seq + 1));

    if (const auto* e = std::get_if<ProvisionedEvent>(&event.payload)) {
        if (e->sku != sku_for(e->record.product_id)) return corrupt(seq, "sku does not match product id");
        if (items.contains(e->sku)) return corrupt(seq, "sku " + e->sku + " provisioned twice");
        if (carrier_index.contains(e->carrier_ref)) return corrupt(seq, "carrier already bound");

        if (e->carrier_kind == CarrierKind::Nfc) {
            auto uid = uid_from_hex(e->carrier_ref);
            if (!uid) return corrupt(seq, "bad tag UID");
            Type2Tag blank;
            blank.uid = *uid;
            auto tag = write_tag(blank, e->record);
            if (!tag) return corrupt(seq, tag.error().message);
            tags.emplace(e->carrier_ref, std::move(tag).value());
        } else {
            if (e->carrier_ref != ean13_for_product(e->record.product_id))
                return corrupt(seq, "barcode does not encode the product id");
            labels.emplace(e->carrier_ref, BarcodeLabel(Symbology::Ean13, e->carrier_ref));
        }
        carrier_index.emplace(e->carrier_ref, e->sku);
        items.emplace(e->sku, InventoryItem{e->sku, e->record, e->carrier_kind, e->carrier_ref, 0,
                                            ItemStatus::InStock, std::nullopt});
    } else if (const auto* e = std::get_if<SoldEvent>(&event.payload)) {
        auto it = items.find(e->sku);
        if (it == items.end()) return corrupt(seq, "sale of unknown sku " + e->sku);
        InventoryItem& item = it->second;
        if (item.status != ItemStatus::InStock) return corrupt(seq, "double sale of " + e->sku);
        if (e->receipt_id != next_receipt_id) return corrupt(seq, "receipt id out of order");
        if (e->price_minor != item.record.price_minor) return corrupt(seq, "sale price disagrees with catalog");

        item.status = ItemStatus::Sold;
        item.sold_at = event.ts;
        Receipt receipt{e->receipt_id, {{item.sku, item.record.name, e->price_minor}}, e->price_minor, event.ts};
        receipts.emplace(e->receipt_id, std::move(receipt));
        ++next_receipt_id;
    } else if (const auto* e = std::get_if<RepricedEvent>(&event.payload)) {
        auto it = items.find(e->sku);
        if (it == items.end()) return corrupt(seq, "reprice of unknown sku " + e->sku);
        InventoryItem& item = it->second;
        if (item.status != ItemStatus::InStock) return corrupt(seq, "reprice of sold item");
        const bool is_barcode = item.carrier_kind == CarrierKind::Barcode;
        if (is_barcode != e->label_replaced) return corrupt(seq, "reprice does not match carrier kind");

        ProductRecord updated = item.record;
        updated.price_minor = e->new_price_minor;
        if (!is_barcode) {
            auto tag_it = tags.find(item.carrier_ref);
            if (tag_it == tags.end()) return corrupt(seq, "tag missing for " + e->sku);
            Type2Tag unlocked = tag_it->second;
            unlocked.write_locked = false;
            auto rewritten = write_tag(unlocked, updated);
            if (!rewritten) return corrupt(seq, rewritten.error().message);
            rewritten->write_locked = tag_it->second.write_locked;
            tag_it->second = std::move(rewritten).value();
        }
        item.record = std::move(updated);
        ++item.carrier_revision;
    }
    last_seq = seq;
    return {};
}

Result<StoreState> replay(std::span<const StoreEvent> events) {
    StoreState state;
    for (const auto& e : events)
        if (auto r = state.apply(e); !r) return r.error();
    return state;
}

// ---------------------------------------------------------------------------
// Store

class Store::Journal {
public:
    Journal(std::filesystem::path dir, EventLogWriter writer, std::size_t snapshot_every)
        : dir_(std::move(dir)), writer_(std::move(writer)), snapshot_every_(snapshot_every) {}

    Result<void> append(const StoreEvent& e) { return writer_.append(e); }
    [[nodiscard]] bool snapshot_due(std::uint64_t seq) const {
        return snapshot_every_ > 0 && seq % snapshot_every_ == 0;
    }
    [[nodiscard]] std::filesystem::path snapshot_path() const { return dir_ / "snapshot.json"; }

private:
    std::filesystem::path dir_;
    EventLogWriter writer_;
    std::size_t snapshot_every_;
};

Store::Store(Clock clock) : clock_(std::move(clock)) {}
Store::~Store() = default;

Result<std::unique_ptr<Store>> Store::open(const std::filesystem::path& dir, Clock clock,
                                           std::size_t snapshot_every) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return make_error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());

    const auto log_path = dir / "events.jsonl";
    auto events = read_event_log(log_path);
    if (!events) return events.error();
    auto state = replay(*events);
    if (!state) return state.error();
    auto writer = EventLogWriter::open(log_path);
    if (!writer) return writer.error();

    auto store = std::make_unique<Store>(std::move(clock));
    store->state_ = std::move(state).value();
    store->events_ = std::move(events).value();
    store->journal_ = std::make_unique<Journal>(dir, std::move(writer).value(), snapshot_every);
    return store;
}

Result<void> Store::commit(StoreEvent::Payload payload) {
    StoreEvent event{state_.last_seq + 1, clock_(), std::move(payload)};
    StoreState next = state_;
    if (auto r = next.apply(event); !r) return r;
    if (journal_) {
        if (auto r = journal_->append(event); !r) return r;
    }
    state_ = std::move(next);
    events_.push_back(std::move(event));
    if (journal_ && journal_->snapshot_due(state_.last_seq))
        return write_file_atomic(journal_->snapshot_path(), snapshot_to_json(state_).dump(2) + "\n");
    return {};
}

Result<const InventoryItem*> Store::lookup_for_update(std::string_view key) const {
    const std::string k(key);
    if (auto it = state_.items.find(k); it != state_.items.end()) return &it->second;
    if (auto c = state_.carrier_index.find(k); c != state_.carrier_index.end())
        return &state_.items.at(c->second);
    return make_error(Errc::UnknownProduct, "no item " + k);
}

Result<InventoryItem> Store::provision(const ProductRecord& record, CarrierKind carrier_kind) {
    if (auto v = validate_record(record); !v) return v.error();
    const std::string sku = sku_for(record.product_id);

    std::unique_lock lock(mu_);
    if (state_.items.contains(sku)) return make_error(Errc::DuplicateSku, "sku " + sku + " already exists");

    std::string carrier_ref;
    if (carrier_kind == CarrierKind::Nfc) {
        Type2Tag blank;
        blank.uid = mint_uid(state_.tags.size() + 1);
        if (auto tag = write_tag(blank, record); !tag) return tag.error();
        carrier_ref = uid_to_hex(blank.uid);
    } else {
        carrier_ref = ean13_for_product(record.product_id);
    }
    if (auto r = commit(ProvisionedEvent{sku, record, carrier_kind, carrier_ref}); !r) return r.error();
    return state_.items.at(sku);
}

Result<Receipt> Store::checkout(const ScanOutcome& scan) {
    if (!scan.success) {
        const auto reason = scan.failure_reason ? to_string(*scan.failure_reason) : "UNKNOWN";
        return make_error(Errc::ScanFailed, std::string(reason));
    }
    auto product_id = product_id_from_payload(scan.payload);
    if (!product_id) return product_id.error();
    const std::string sku = sku_for(*product_id);

    std::unique_lock lock(mu_);
    auto it = state_.items.find(sku);
    if (it == state_.items.end()) return make_error(Errc::UnknownProduct, "product " + sku + " is not in the catalog");
    const InventoryItem& item = it->second;
    if (item.status == ItemStatus::Sold) return make_error(Errc::AlreadySold, "item " + sku + " was already sold");

    const auto receipt_id = state_.next_receipt_id;
    if (auto r = commit(SoldEvent{sku, receipt_id, item.record.price_minor}); !r) return r.error();
    return state_.receipts.at(receipt_id);
}

Result<InventoryItem> Store::reprice(std::string_view key, std::uint32_t new_price_minor) {
    std::unique_lock lock(mu_);
    auto found = lookup_for_update(key);
    if (!found) return found.error();
    const InventoryItem& item = **found;
    const std::string sku = item.sku;
    if (item.status == ItemStatus::Sold) return make_error(Errc::ItemSold, "item " + sku + " is sold");
    if (item.carrier_kind == CarrierKind::Barcode)
        return make_error(Errc::ImmutableCarrier,
                          "printed barcode cannot be rewritten; replace the label instead");
    if (state_.tags.at(item.carrier_ref).write_locked)
        return make_error(Errc::TagLocked, "tag " + item.carrier_ref + " is write locked");

    if (auto r = commit(RepricedEvent{sku, new_price_minor, false}); !r) return r.error();
    return state_.items.at(sku);
}

Result<InventoryItem> Store::replace_label(std::string_view key, std::uint32_t new_price_minor) {
    std::unique_lock lock(mu_);
    auto found = lookup_for_update(key);
    if (!found) return found.error();
    const InventoryItem& item = **found;
    const std::string sku = item.sku;
    if (item.status == ItemStatus::Sold) return make_error(Errc::ItemSold, "item " + sku + " is sold");
    if (item.carrier_kind != CarrierKind::Barcode)
        return make_error(Errc::InvalidLabel, "item " + sku + " carries an NFC tag; reprice it instead");

    if (auto r = commit(RepricedEvent{sku, new_price_minor, true}); !r) return r.error();
    return state_.items.at(sku);
}

Result<void> Store::set_tag_locked(std::string_view key, bool locked) {
    std::unique_lock lock(mu_);
    auto found = lookup_for_update(key);
    if (!found) return found.error();
    if ((*found)->carrier_kind != CarrierKind::Nfc)
        return make_error(Errc::UnknownCarrier, "item " + (*found)->sku + " has no tag");
    state_.tags.at((*found)->carrier_ref).write_locked = locked;
    return {};
}

std::vector<InventoryItem> Store::items(std::optional<ItemStatus> status) const {
    std::shared_lock lock(mu_);
    std::vector<InventoryItem> out;
    for (const auto& [sku, item] : state_.items)
        if (!status || item.status == *status) out.push_back(item);
    return out;
}

std::optional<InventoryItem> Store::item(std::string_view sku) const {
    std::shared_lock lock(mu_);
    if (auto it = state_.items.find(std::string(sku)); it != state_.items.end()) return it->second;
    return std::nullopt;
}

std::optional<Receipt> Store::receipt(std::uint64_t id) const {
    std::shared_lock lock(mu_);
    if (auto it = state_.receipts.find(id); it != state_.receipts.end()) return it->second;
    return std::nullopt;
}

Result<CarrierView> Store::carrier(std::string_view carrier_ref) const {
    std::shared_lock lock(mu_);
    const std::string ref(carrier_ref);
    if (auto it = state_.tags.find(ref); it != state_.tags.end()) return CarrierView{it->second};
    if (auto it = state_.labels.find(ref); it != state_.labels.end()) return CarrierView{it->second};
    return make_error(Errc::UnknownCarrier, "no carrier " + ref);
}

std::vector<StoreEvent> Store::events() const {
    std::shared_lock lock(mu_);
    return events_;
}

StoreState Store::state() const {
    std::shared_lock lock(mu_);
    return state_;
}

std::string Store::snapshot() const {
    std::shared_lock lock(mu_);
    return snapshot_to_json(state_).dump(2) + "\n";
}

Result<void> Store::write_snapshot() const {
    std::shared_lock lock(mu_);
    if (!journal_) return {};
    return write_file_atomic(journal_->snapshot_path(), snapshot_to_json(state_).dump(2) + "\n");
}

}  // namespace invctl
