#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "counterquill/corpus.hpp"
#include "counterquill/domain.hpp"

namespace counterquill::study {

enum class Instrument { nasa_tlx, custom };

std::string_view to_string(Instrument i);
Instrument parse_instrument(std::string_view s);

inline constexpr std::size_t items_per_instrument = 6;
inline constexpr int likert_min = 1;
inline constexpr int likert_max = 7;

using Items = std::array<int, items_per_instrument>;

// Display names, in questionnaire order.
inline constexpr std::array<std::string_view, items_per_instrument> tlx_item_names = {
    "Mental Demand", "Physical Demand", "Temporal Demand", "Performance", "Effort", "Frustration"};
inline constexpr std::array<std::string_view, items_per_instrument> custom_item_names = {
    "HS Identification Confidence", "Brainstorming Effectiveness", "Self-Efficacy in CS Writing",
    "Engagement with AI",           "Satisfaction with CS",        "Willingness to Post Online"};

struct QuestionnaireResponse {
    std::string session_id;
    Instrument instrument = Instrument::nasa_tlx;
    Items items{};
    Timestamp captured_at = 0;

    friend bool operator==(const QuestionnaireResponse&, const QuestionnaireResponse&) = default;
};

// Throws Error(invalid_argument) for a wrong count, Error(out_of_range) for a
// value outside 1..7.
Items check_items(const std::vector<int>& items);

struct ConditionOrder {
    std::size_t participant_index = 0;
    Condition first = Condition::baseline;
    Condition second = Condition::counterquill;

    friend bool operator==(const ConditionOrder&, const ConditionOrder&) = default;
};

// Two-condition Latin square: even indices start with baseline.
ConditionOrder assign_condition_order(std::size_t participant_index);

inline constexpr std::size_t items_per_theme = 4;

// Four instances per theme, drawn without replacement, in theme order. The
// draw depends only on (participant_id, seed) and the corpus contents.
// Throws Error(insufficient_corpus) when a theme has fewer than four.
std::vector<std::string> assign_corpus(std::string_view participant_id, const Corpus& corpus,
                                       std::uint64_t seed);

// Every corpus id in a participant-specific order, same seeding as
// assign_corpus. Used to pick an instance when a session names none.
std::vector<std::string> instance_order(std::string_view participant_id, const Corpus& corpus,
                                        std::uint64_t seed);

// One exported row per (participant, condition).
struct DatasetRow {
    std::string participant_id;
    std::size_t participant_index = 0;
    Condition condition = Condition::baseline;
    int condition_position = 1;  // 1 or 2
    Condition first_condition = Condition::baseline;
    std::string session_id;
    std::string instance_id;
    Stage stage = Stage::created;
    std::optional<int> quiz_correct;
    std::array<std::optional<int>, items_per_instrument> tlx{};
    std::array<std::optional<int>, items_per_instrument> custom{};
    // Seconds spent per stage, created .. questionnaire.
    std::array<std::optional<double>, 7> seconds{};

    friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

const std::vector<std::string>& dataset_columns();

// Comma-separated UTF-8 with a header row; missing values are empty.
std::string write_dataset(const std::vector<DatasetRow>& rows);
// Throws Error(invalid_argument) on a header mismatch or malformed field.
std::vector<DatasetRow> read_dataset(std::string_view csv);

// RFC 4180 records; exposed for the report tooling and tests.
std::vector<std::vector<std::string>> parse_csv(std::string_view csv);

}  // namespace counterquill::study
