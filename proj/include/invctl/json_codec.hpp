#pragma once

// JSON shapes shared by the event log, snapshots, the HTTP API and the Python
// bindings. Field names are the snake_case struct field names.

#include "invctl/inventory.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace invctl {

using Json = nlohmann::ordered_json;

std::string format_rfc3339(Timestamp ts);
Result<Timestamp> parse_rfc3339(std::string_view text);

Json to_json(const ProductRecord& record);
Result<ProductRecord> record_from_json(const Json& j);

Json to_json(const InventoryItem& item);
Json to_json(const Receipt& receipt);
Json to_json(const ScanOutcome& outcome);

/// `{"seq","kind","ts","payload"}` in that key order.
Json to_json(const StoreEvent& event);
Result<StoreEvent> event_from_json(const Json& j);

/// `{"items":[...],"next_receipt_id","last_seq"}`; NFC items carry their tag bytes as `tag_data`.
Json snapshot_to_json(const StoreState& state);

}  // namespace invctl
