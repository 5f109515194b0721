#include "counterquill/event_log.hpp"

#include <sstream>

#include "counterquill/error.hpp"

namespace counterquill {

std::vector<EventRecord> parse_event_lines(std::string_view text,
                                          std::vector<std::size_t>* offsets) {
    std::vector<EventRecord> events;
    std::size_t offset = 0;
    std::size_t line = 0;
    std::uint64_t last_seq = 0;
    while (offset < text.size()) {
        ++line;
        auto nl = text.find('\n', offset);
        if (nl == std::string_view::npos) {
            // A crash mid-append leaves a record without its newline.
            throw CorruptLogError(line, offset, "truncated record (no trailing newline)");
        }
        auto raw = text.substr(offset, nl - offset);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (raw.find_first_not_of(" \t") == std::string_view::npos) {
            throw CorruptLogError(line, offset, "blank record");
        }
        Json j = Json::parse(raw, nullptr, false);
        if (j.is_discarded()) throw CorruptLogError(line, offset, "record is not valid JSON");
        EventRecord e;
        try {
            e = event_from_json(j);
        } catch (const Error& err) {
            throw CorruptLogError(line, offset, err.what());
        }
        if (e.seq <= last_seq) {
            throw CorruptLogError(line, offset,
                                  "sequence " + std::to_string(e.seq) + " does not follow " +
                                      std::to_string(last_seq));
        }
        last_seq = e.seq;
        events.push_back(std::move(e));
        if (offsets) offsets->push_back(offset);
        offset = nl + 1;
    }
    return events;
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) fail(ErrorCode::config, "cannot open event log " + path_.string() + " for writing");
}

std::vector<EventRecord> EventLog::load(std::vector<std::size_t>* offsets) const {
    if (!persistent()) {
        if (offsets) offsets->assign(appended_.size(), 0);
        return appended_;
    }
    std::ifstream in(path_, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_event_lines(buf.str(), offsets);
}

void EventLog::append(const EventRecord& record) {
    std::lock_guard lock(mu_);
    if (persistent()) {
        out_ << to_json_value(record).dump() << '\n';
        out_.flush();
        if (!out_) fail(ErrorCode::config, "write to event log " + path_.string() + " failed");
        return;
    }
    appended_.push_back(record);
}

void EventLog::flush() {
    std::lock_guard lock(mu_);
    if (persistent()) out_.flush();
}

}  // namespace counterquill
