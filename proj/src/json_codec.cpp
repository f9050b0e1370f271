#include "invctl/json_codec.hpp"

#include <cstdio>
#include <limits>

namespace invctl {

namespace {

using namespace std::chrono;

template <typename T>
bool get_uint(const Json& j, const char* key, T& out) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) return false;
    const auto v = j[key].get<std::uint64_t>();
    if (v > std::numeric_limits<T>::max()) return false;
    out = static_cast<T>(v);
    return true;
}

bool get_string(const Json& j, const char* key, std::string& out) {
    if (!j.contains(key) || !j[key].is_string()) return false;
    out = j[key].get<std::string>();
    return true;
}

Error corrupt(std::string message) { return make_error(Errc::CorruptLog, std::move(message)); }

}  // namespace

std::string format_rfc3339(Timestamp ts) {
    const auto day = floor<days>(ts);
    const year_month_day ymd{day};
    const hh_mm_ss hms{ts - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()), static_cast<int>(hms.subseconds().count()));
    return buf;
}

Result<Timestamp> parse_rfc3339(std::string_view text) {
    // Accepts YYYY-MM-DDTHH:MM:SS[.mmm]Z, UTC only.
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0, ms = 0;
    const std::string str(text);
    int consumed = 0;
    if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &s, &consumed) != 6 ||
        consumed != 19)
        return make_error(Errc::CorruptLog, "bad timestamp '" + str + "'");
    std::string_view rest = text.substr(19);
    if (!rest.empty() && rest.front() == '.') {
        if (rest.size() < 5) return make_error(Errc::CorruptLog, "bad timestamp fraction");
        for (int i = 1; i <= 3; ++i) {
            if (rest[i] < '0' || rest[i] > '9') return make_error(Errc::CorruptLog, "bad timestamp fraction");
            ms = ms * 10 + (rest[i] - '0');
        }
        rest.remove_prefix(4);
    }
    if (rest != "Z") return make_error(Errc::CorruptLog, "timestamp must end in Z");
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return make_error(Errc::CorruptLog, "timestamp out of range");
    return Timestamp{sys_days{ymd}} + hours{h} + minutes{mi} + seconds{s} + milliseconds{ms};
}

Json to_json(const ProductRecord& r) {
    return Json{{"product_id", r.product_id},
                {"name", r.name},
                {"price_minor", r.price_minor},
                {"manufacturing_date", r.manufacturing_date},
                {"expiry_date", r.expiry_date},
                {"delivery_date", r.delivery_date}};
}

Result<ProductRecord> record_from_json(const Json& j) {
    if (!j.is_object()) return make_error(Errc::InvalidName, "record must be an object");
    ProductRecord r;
    if (!get_uint(j, "product_id", r.product_id) || !get_uint(j, "price_minor", r.price_minor) ||
        !get_uint(j, "manufacturing_date", r.manufacturing_date) ||
        !get_uint(j, "expiry_date", r.expiry_date) || !get_uint(j, "delivery_date", r.delivery_date))
        return make_error(Errc::OutOfRange, "record numeric field missing or out of range");
    if (!get_string(j, "name", r.name)) return make_error(Errc::InvalidName, "record name missing");
    if (auto v = validate_record(r); !v) return v.error();
    return r;
}

Json to_json(const InventoryItem& item) {
    return Json{{"sku", item.sku},
                {"record", to_json(item.record)},
                {"carrier_kind", to_string(item.carrier_kind)},
                {"carrier_ref", item.carrier_ref},
                {"carrier_revision", item.carrier_revision},
                {"status", to_string(item.status)},
                {"sold_at", item.sold_at ? Json(format_rfc3339(*item.sold_at)) : Json(nullptr)}};
}

Json to_json(const Receipt& receipt) {
    Json lines = Json::array();
    for (const auto& l : receipt.lines)
        lines.push_back(Json{{"sku", l.sku}, {"name", l.name}, {"price_minor", l.price_minor}});
    return Json{{"receipt_id", receipt.receipt_id},
                {"lines", std::move(lines)},
                {"total_minor", receipt.total_minor},
                {"issued_at", format_rfc3339(receipt.issued_at)}};
}

Json to_json(const ScanOutcome& o) {
    Json j{{"success", o.success},
           {"failure_reason", o.failure_reason ? Json(to_string(*o.failure_reason)) : Json(nullptr)},
           {"latency_ms", o.latency_ms}};
    if (const auto* bytes = std::get_if<Bytes>(&o.payload))
        j["payload"] = to_hex(*bytes);
    else if (const auto* text = std::get_if<std::string>(&o.payload))
        j["payload"] = *text;
    else
        j["payload"] = nullptr;
    return j;
}

Json to_json(const StoreEvent& event) {
    Json payload = std::visit(
        [](const auto& p) -> Json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ProvisionedEvent>) {
                return Json{{"sku", p.sku},
                            {"record", to_json(p.record)},
                            {"carrier_kind", to_string(p.carrier_kind)},
                            {"carrier_ref", p.carrier_ref}};
            } else if constexpr (std::is_same_v<T, SoldEvent>) {
                return Json{{"sku", p.sku}, {"receipt_id", p.receipt_id}, {"price_minor", p.price_minor}};
            } else {
                return Json{{"sku", p.sku},
                            {"new_price_minor", p.new_price_minor},
                            {"label_replaced", p.label_replaced}};
            }
        },
        event.payload);
    return Json{{"seq", event.seq},
                {"kind", to_string(event.kind())},
                {"ts", format_rfc3339(event.ts)},
                {"payload", std::move(payload)}};
}

Result<StoreEvent> event_from_json(const Json& j) {
    if (!j.is_object()) return corrupt("event is not an object");
    StoreEvent event;
    std::string kind_text, ts_text;
    if (!get_uint(j, "seq", event.seq)) return corrupt("event seq missing");
    if (!get_string(j, "kind", kind_text)) return corrupt("event kind missing");
    if (!get_string(j, "ts", ts_text)) return corrupt("event ts missing");
    if (!j.contains("payload") || !j["payload"].is_object()) return corrupt("event payload missing");
    auto ts = parse_rfc3339(ts_text);
    if (!ts) return ts.error();
    event.ts = *ts;

    const Json& p = j["payload"];
    const auto kind = parse_event_kind(kind_text);
    if (!kind) return corrupt("unknown event kind '" + kind_text + "'");
    switch (*kind) {
        case EventKind::Provisioned: {
            ProvisionedEvent e;
            std::string carrier_kind;
            if (!get_string(p, "sku", e.sku) || !get_string(p, "carrier_kind", carrier_kind) ||
                !get_string(p, "carrier_ref", e.carrier_ref) || !p.contains("record"))
                return corrupt("PROVISIONED payload incomplete");
            auto ck = parse_carrier_kind(carrier_kind);
            if (!ck) return corrupt("unknown carrier kind '" + carrier_kind + "'");
            e.carrier_kind = *ck;
            auto record = record_from_json(p["record"]);
            if (!record) return corrupt("PROVISIONED record invalid: " + record.error().message);
            e.record = std::move(record).value();
            event.payload = std::move(e);
            break;
        }
        case EventKind::Sold: {
            SoldEvent e;
            if (!get_string(p, "sku", e.sku) || !get_uint(p, "receipt_id", e.receipt_id) ||
                !get_uint(p, "price_minor", e.price_minor))
                return corrupt("SOLD payload incomplete");
            event.payload = std::move(e);
            break;
        }
        case EventKind::Repriced: {
            RepricedEvent e;
            if (!get_string(p, "sku", e.sku) || !get_uint(p, "new_price_minor", e.new_price_minor) ||
                !p.contains("label_replaced") || !p["label_replaced"].is_boolean())
                return corrupt("REPRICED payload incomplete");
            e.label_replaced = p["label_replaced"].get<bool>();
            event.payload = std::move(e);
            break;
        }
    }
    return event;
}

Json snapshot_to_json(const StoreState& state) {
    Json items = Json::array();
    for (const auto& [sku, item] : state.items) {
        Json j = to_json(item);
        if (item.carrier_kind == CarrierKind::Nfc) {
            if (auto it = state.tags.find(item.carrier_ref); it != state.tags.end())
                j["tag_data"] = to_hex(it->second.data);
        }
        items.push_back(std::move(j));
    }
    return Json{{"items", std::move(items)},
                {"next_receipt_id", state.next_receipt_id},
                {"last_seq", state.last_seq}};
}

}  // namespace invctl
