#include "counterquill/study.hpp"

#include <cctype>
#include <charconv>
#include <random>

#include "counterquill/error.hpp"

namespace counterquill::study {

namespace {

constexpr Stage timed_stages[] = {Stage::created,       Stage::learning, Stage::quiz_done,
                                  Stage::brainstorm_highlight, Stage::brainstorm_qa,
                                  Stage::writing,       Stage::questionnaire};

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Unbiased draw in [0, bound) from raw engine output; the standard
// distributions are not reproducible across library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <typename T>
std::string opt(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*v);
    } else {
        return std::to_string(*v);
    }
}

template <typename T>
std::optional<T> parse_opt(const std::string& field, const std::string& column) {
    if (field.empty()) return std::nullopt;
    T value{};
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        fail(ErrorCode::invalid_argument, "bad value '" + field + "' in column " + column);
    }
    return value;
}

std::string snake(std::string_view name) {
    std::string out;
    for (char c : name) {
        if (c == ' ' || c == '-') {
            out += '_';
        } else {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Instrument i) { return i == Instrument::nasa_tlx ? "nasa_tlx" : "custom"; }

Instrument parse_instrument(std::string_view s) {
    if (s == "nasa_tlx") return Instrument::nasa_tlx;
    if (s == "custom") return Instrument::custom;
    fail(ErrorCode::invalid_argument, "unknown instrument '" + std::string(s) + "'");
}

Items check_items(const std::vector<int>& items) {
    if (items.size() != items_per_instrument) {
        fail(ErrorCode::invalid_argument, "questionnaire needs exactly 6 items, got " +
                                              std::to_string(items.size()));
    }
    Items out{};
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i] < likert_min || items[i] > likert_max) {
            fail(ErrorCode::out_of_range, "item " + std::to_string(i + 1) + " = " +
                                              std::to_string(items[i]) + " lies outside 1..7");
        }
        out[i] = items[i];
    }
    return out;
}

ConditionOrder assign_condition_order(std::size_t participant_index) {
    if (participant_index % 2 == 0) {
        return {participant_index, Condition::baseline, Condition::counterquill};
    }
    return {participant_index, Condition::counterquill, Condition::baseline};
}

namespace {

std::mt19937_64 participant_rng(std::string_view participant_id, std::uint64_t seed) {
    const auto h = fnv1a(participant_id);
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

std::vector<std::string> instance_order(std::string_view participant_id, const Corpus& corpus,
                                        std::uint64_t seed) {
    auto rng = participant_rng(participant_id, seed);
    std::vector<std::string> ids;
    for (const auto& inst : corpus.instances()) ids.push_back(inst.id);
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        std::swap(ids[i], ids[i + draw_below(rng, ids.size() - i)]);
    }
    return ids;
}

std::vector<std::string> assign_corpus(std::string_view participant_id, const Corpus& corpus,
                                       std::uint64_t seed) {
    auto rng = participant_rng(participant_id, seed);

    std::vector<std::string> out;
    for (Theme theme : all_themes) {
        auto pool = corpus.by_theme(theme);
        if (pool.size() < items_per_theme) {
            fail(ErrorCode::insufficient_corpus,
                 "theme " + std::string(to_string(theme)) + " has " + std::to_string(pool.size()) +
                     " instances; 4 are required");
        }
        for (std::size_t i = 0; i < items_per_theme; ++i) {
            auto j = i + draw_below(rng, pool.size() - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]->id);
        }
    }
    return out;
}

const std::vector<std::string>& dataset_columns() {
    static const std::vector<std::string> columns = [] {
        std::vector<std::string> c = {"participant_id",     "participant_index", "condition",
                                      "condition_position", "first_condition",   "session_id",
                                      "instance_id",        "stage",             "quiz_correct"};
        for (auto name : tlx_item_names) c.push_back("tlx_" + snake(name));
        for (auto name : custom_item_names) c.push_back("custom_" + snake(name));
        for (Stage s : timed_stages) c.push_back("seconds_" + std::string(to_string(s)));
        return c;
    }();
    return columns;
}

std::string write_dataset(const std::vector<DatasetRow>& rows) {
    std::string out;
    const auto& columns = dataset_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& r : rows) {
        std::vector<std::string> f = {r.participant_id,
                                      std::to_string(r.participant_index),
                                      std::string(to_string(r.condition)),
                                      std::to_string(r.condition_position),
                                      std::string(to_string(r.first_condition)),
                                      r.session_id,
                                      r.instance_id,
                                      std::string(to_string(r.stage)),
                                      opt(r.quiz_correct)};
        for (const auto& v : r.tlx) f.push_back(opt(v));
        for (const auto& v : r.custom) f.push_back(opt(v));
        for (const auto& v : r.seconds) f.push_back(opt(v));
        for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_escape(f[i]);
        out += "\n";
    }
    return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view csv) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    for (std::size_t i = 0; i < csv.size(); ++i) {
        char c = csv[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < csv.size() && csv[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < csv.size() && csv[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            field_started = false;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) fail(ErrorCode::invalid_argument, "unterminated quoted CSV field");
    if (field_started || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<DatasetRow> read_dataset(std::string_view csv) {
    auto records = parse_csv(csv);
    const auto& columns = dataset_columns();
    if (records.empty() || records.front() != columns) {
        fail(ErrorCode::invalid_argument, "dataset header does not match the export format");
    }
    std::vector<DatasetRow> rows;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& f = records[r];
        if (f.size() != columns.size()) {
            fail(ErrorCode::invalid_argument,
                 "dataset row " + std::to_string(r) + " has " + std::to_string(f.size()) + " fields");
        }
        DatasetRow row;
        std::size_t k = 0;
        row.participant_id = f[k++];
        row.participant_index = parse_opt<std::size_t>(f[k], columns[k]).value_or(0);
        ++k;
        row.condition = parse_condition(f[k++]);
        row.condition_position = parse_opt<int>(f[k], columns[k]).value_or(1);
        ++k;
        row.first_condition = parse_condition(f[k++]);
        row.session_id = f[k++];
        row.instance_id = f[k++];
        row.stage = parse_stage(f[k++]);
        row.quiz_correct = parse_opt<int>(f[k], columns[k]);
        ++k;
        for (auto& v : row.tlx) {
            v = parse_opt<int>(f[k], columns[k]);
            ++k;
        }
        for (auto& v : row.custom) {
            v = parse_opt<int>(f[k], columns[k]);
            ++k;
        }
        for (auto& v : row.seconds) {
            v = parse_opt<double>(f[k], columns[k]);
            ++k;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace counterquill::study
