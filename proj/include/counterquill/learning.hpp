#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "counterquill/domain.hpp"

namespace counterquill::learning {

enum class Track { hate_speech, counterspeech };

std::string_view to_string(Track t);

struct LessonSection {
    Track track = Track::hate_speech;
    int ordinal = 1;
    std::string title;
    std::string body;

    friend bool operator==(const LessonSection&, const LessonSection&) = default;
};

struct QuizOption {
    char label = 'A';
    std::string text;

    friend bool operator==(const QuizOption&, const QuizOption&) = default;
};

// Public view of a question. Answer keys never leave the server.
struct QuizQuestion {
    int ordinal = 1;
    std::string prompt;
    std::vector<QuizOption> options;

    friend bool operator==(const QuizQuestion&, const QuizQuestion&) = default;
};

struct Curriculum {
    std::string version;
    std::vector<LessonSection> sections;  // track, then ordinal
    std::vector<QuizQuestion> questions;

    friend bool operator==(const Curriculum&, const Curriculum&) = default;
};

inline constexpr std::size_t quiz_length = 4;

// The bundled curriculum, parsed and checked once.
const Curriculum& get_curriculum();

// Parses and validates a curriculum document: three sections per track, four
// questions with options A–D. Throws Error(invalid_argument).
Curriculum parse_curriculum(const Json& document);

Json to_json_value(const Curriculum& c);

struct QuizResult {
    std::string session_id;
    std::array<char, quiz_length> answers{};
    std::array<bool, quiz_length> correct{};
    int n_correct = 0;

    friend bool operator==(const QuizResult&, const QuizResult&) = default;
};

// Throws Error(invalid_argument) unless there are exactly four labels A–D.
std::array<char, quiz_length> parse_answers(const std::vector<std::string>& labels);

QuizResult grade_answers(const std::string& session_id,
                         const std::array<char, quiz_length>& answers);

// 100 · Σ n_correct / (4 · count). Throws Error(invalid_argument) when empty.
double accuracy_aggregate(const std::vector<QuizResult>& results);
double accuracy_aggregate(const std::vector<int>& correct_counts);

Json to_json_value(const QuizResult& r);
QuizResult quiz_result_from_json(const Json& j);

}  // namespace counterquill::learning
