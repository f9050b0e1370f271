#pragma once

#include "invctl/inventory.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace invctl {

/// One JSON object per line, LF terminated.
std::string event_to_line(const StoreEvent& event);

/// Parses a single line. Torn or unparseable lines and unknown kinds are CorruptLog.
Result<StoreEvent> event_from_line(std::string_view line);

/// Parses a whole log. A trailing newline is expected but a missing one is tolerated.
Result<std::vector<StoreEvent>> parse_event_log(std::string_view text);

/// Missing file reads as an empty log.
Result<std::vector<StoreEvent>> read_event_log(const std::filesystem::path& path);

/// Appends events and flushes after each line.
class EventLogWriter {
public:
    static Result<EventLogWriter> open(const std::filesystem::path& path);
    Result<void> append(const StoreEvent& event);

private:
    explicit EventLogWriter(std::ofstream out) : out_(std::move(out)) {}
    std::ofstream out_;
};

/// Writes via a temporary file and rename, so readers never see a half-written snapshot.
Result<void> write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace invctl
