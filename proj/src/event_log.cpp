#include "invctl/event_log.hpp"

#include "invctl/json_codec.hpp"

#include <sstream>

namespace invctl {

std::string event_to_line(const StoreEvent& event) { return to_json(event).dump() + "\n"; }

Result<StoreEvent> event_from_line(std::string_view line) {
    Json j = Json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return make_error(Errc::CorruptLog, "unparseable log line");
    return event_from_json(j);
}

Result<std::vector<StoreEvent>> parse_event_log(std::string_view text) {
    std::vector<StoreEvent> events;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        auto event = event_from_line(line);
        if (!event)
            return make_error(Errc::CorruptLog,
                              "line " + std::to_string(line_no) + ": " + event.error().message);
        events.push_back(std::move(event).value());
    }
    return events;
}

Result<std::vector<StoreEvent>> read_event_log(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::vector<StoreEvent>{};
    std::ifstream in(path, std::ios::binary);
    if (!in) return make_error(Errc::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_event_log(buf.str());
}

Result<EventLogWriter> EventLogWriter::open(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) return make_error(Errc::IoError, "cannot open " + path.string() + " for append");
    return EventLogWriter(std::move(out));
}

Result<void> EventLogWriter::append(const StoreEvent& event) {
    out_ << event_to_line(event);
    out_.flush();
    if (!out_) return make_error(Errc::IoError, "event log write failed");
    return {};
}

Result<void> write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return make_error(Errc::IoError, "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) return make_error(Errc::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) return make_error(Errc::IoError, "rename failed: " + ec.message());
    return {};
}

}  // namespace invctl
