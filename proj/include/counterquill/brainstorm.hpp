#pragma once

#include <string>
#include <vector>

#include "counterquill/domain.hpp"
#include "counterquill/llm/prompts.hpp"

namespace counterquill::brainstorm {

inline constexpr int default_attempt_cap = 3;

enum class FeedbackSource { model, oracle };

std::string_view to_string(FeedbackSource s);

struct EquivalenceFeedback {
    bool identity_equivalent = false;
    bool action_equivalent = false;
    std::string feedback_text;
    FeedbackSource source = FeedbackSource::model;

    bool both() const { return identity_equivalent && action_equivalent; }
    friend bool operator==(const EquivalenceFeedback&, const EquivalenceFeedback&) = default;
};

struct HighlightSubmission {
    std::string session_id;
    std::vector<TextSpan> identity_selection;
    std::vector<TextSpan> action_selection;
    int attempt = 1;

    friend bool operator==(const HighlightSubmission&, const HighlightSubmission&) = default;
};

struct HighlightAttempt {
    HighlightSubmission submission;
    EquivalenceFeedback feedback;
    Timestamp at = 0;

    friend bool operator==(const HighlightAttempt&, const HighlightAttempt&) = default;
};

struct BrainstormAnswer {
    int question = 1;
    std::string text;

    friend bool operator==(const BrainstormAnswer&, const BrainstormAnswer&) = default;
};

struct Suggestion {
    std::string session_id;
    int question = 1;
    std::string text;
    Timestamp generated_at = 0;

    friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

// Span texts in start order joined by llm::span_joiner. Spans must be valid.
std::string joined_span_text(const std::string& text, std::vector<TextSpan> spans);

// Throws Error(invalid_argument) listing the first violation when the
// submission does not fit the instance text, or when it selects nothing.
void check_submission(const HateSpeechInstance& instance, const HighlightSubmission& submission);

// Prompt inputs for grading `submission` against `instance`'s gold spans. A
// kind with no selection is rendered as "(nothing selected)".
llm::EquivalencePromptInputs equivalence_inputs(const HateSpeechInstance& instance,
                                                const HighlightSubmission& submission);

// Lexical fallback grading; source is always oracle.
EquivalenceFeedback oracle_grade(const HateSpeechInstance& instance,
                                 const HighlightSubmission& submission);

// Templated message naming the missed kinds (or confirming success).
std::string templated_feedback(bool identity_ok, bool action_ok);

// Static tutorial payload: steps plus the worked example.
const Json& tutorial();

Json to_json_value(const EquivalenceFeedback& f);
EquivalenceFeedback feedback_from_json(const Json& j);
Json to_json_value(const HighlightSubmission& s);
HighlightSubmission submission_from_json(const Json& j);

}  // namespace counterquill::brainstorm
