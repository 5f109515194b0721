#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "counterquill/state.hpp"

namespace counterquill {

// Append-only JSON-lines event store. One record per line; appends are
// flushed before they return. An empty path keeps events in memory only.
class EventLog {
public:
    EventLog() = default;
    explicit EventLog(std::filesystem::path path);

    // Reads every record. Throws CorruptLogError for unparseable or truncated
    // lines and for sequence numbers that do not increase.
    // `offsets`, when given, receives each record's byte offset.
    std::vector<EventRecord> load(std::vector<std::size_t>* offsets = nullptr) const;

    void append(const EventRecord& record);
    void flush();

    const std::filesystem::path& path() const { return path_; }
    bool persistent() const { return !path_.empty(); }
private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::vector<EventRecord> appended_;  // memory mode only
    std::mutex mu_;
};

// Parses JSON-lines text; exposed for tests.
std::vector<EventRecord> parse_event_lines(std::string_view text,
                                          std::vector<std::size_t>* offsets = nullptr);

}  // namespace counterquill
