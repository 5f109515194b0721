#include "counterquill/brainstorm.hpp"

#include <algorithm>

#include "counterquill/bundled_data.hpp"
#include "counterquill/error.hpp"
#include "counterquill/llm/lexical.hpp"
#include "counterquill/spans.hpp"

namespace counterquill::brainstorm {

namespace {

constexpr std::string_view nothing_selected = "(nothing selected)";

std::string gold_or_selection(const std::string& text, const std::vector<TextSpan>& spans) {
    return spans.empty() ? std::string(nothing_selected) : joined_span_text(text, spans);
}

}  // namespace

std::string_view to_string(FeedbackSource s) { return s == FeedbackSource::model ? "model" : "oracle"; }

std::string joined_span_text(const std::string& text, std::vector<TextSpan> spans) {
    std::sort(spans.begin(), spans.end(),
              [](const TextSpan& a, const TextSpan& b) { return a.start < b.start; });
    std::string out;
    for (const auto& s : spans) {
        if (!out.empty()) out += llm::span_joiner;
        out += span_text(text, s);
    }
    return out;
}

void check_submission(const HateSpeechInstance& instance, const HighlightSubmission& submission) {
    if (submission.identity_selection.empty() && submission.action_selection.empty()) {
        fail(ErrorCode::invalid_argument, "highlight submission selects nothing");
    }
    for (const auto& s : submission.identity_selection) {
        if (s.kind != SpanKind::identity) {
            fail(ErrorCode::invalid_argument, "identity selection holds an action span");
        }
    }
    for (const auto& s : submission.action_selection) {
        if (s.kind != SpanKind::action) {
            fail(ErrorCode::invalid_argument, "action selection holds an identity span");
        }
    }
    std::vector<TextSpan> all = submission.identity_selection;
    all.insert(all.end(), submission.action_selection.begin(), submission.action_selection.end());
    auto violations = validate_spans(instance.text, all);
    if (!violations.empty()) {
        const auto& v = violations.front();
        fail(ErrorCode::invalid_argument,
             "invalid highlight: " + std::string(to_string(v.reason)) + " span [" +
                 std::to_string(v.span.start) + "," + std::to_string(v.span.end) + ")");
    }
}

llm::EquivalencePromptInputs equivalence_inputs(const HateSpeechInstance& instance,
                                                const HighlightSubmission& submission) {
    return {instance.text,
            joined_span_text(instance.text, instance.gold_identity),
            joined_span_text(instance.text, instance.gold_action),
            gold_or_selection(instance.text, submission.identity_selection),
            gold_or_selection(instance.text, submission.action_selection)};
}

EquivalenceFeedback oracle_grade(const HateSpeechInstance& instance,
                                 const HighlightSubmission& submission) {
    auto in = equivalence_inputs(instance, submission);
    EquivalenceFeedback f;
    f.identity_equivalent = !submission.identity_selection.empty() &&
                            llm::lexically_equivalent(in.user_selection_1, in.identity);
    f.action_equivalent = !submission.action_selection.empty() &&
                          llm::lexically_equivalent(in.user_selection_2, in.action);
    f.feedback_text = templated_feedback(f.identity_equivalent, f.action_equivalent);
    f.source = FeedbackSource::oracle;
    return f;
}

std::string templated_feedback(bool identity_ok, bool action_ok) {
    if (identity_ok && action_ok) {
        return "Well done: both highlights match the reference answer.";
    }
    std::string missed;
    if (!identity_ok) missed = "identity (yellow)";
    if (!action_ok) missed += missed.empty() ? "dehumanizing action (green)"
                                             : " and dehumanizing action (green)";
    return "Your " + missed +
           " highlight does not match the reference answer yet. Look again for the words that "
           "name who is targeted and the words that describe how they are dehumanized, then "
           "press View to compare.";
}

const Json& tutorial() {
    static const Json payload = Json::parse(data::tutorial_json);
    return payload;
}

Json to_json_value(const EquivalenceFeedback& f) {
    return {{"identity_equivalent", f.identity_equivalent},
            {"action_equivalent", f.action_equivalent},
            {"feedback_text", f.feedback_text},
            {"source", to_string(f.source)}};
}

EquivalenceFeedback feedback_from_json(const Json& j) {
    EquivalenceFeedback f;
    f.identity_equivalent = j.at("identity_equivalent").get<bool>();
    f.action_equivalent = j.at("action_equivalent").get<bool>();
    f.feedback_text = j.at("feedback_text").get<std::string>();
    f.source = j.at("source").get<std::string>() == "model" ? FeedbackSource::model
                                                          : FeedbackSource::oracle;
    return f;
}

Json to_json_value(const HighlightSubmission& s) {
    return {{"session_id", s.session_id},
            {"identity_selection", s.identity_selection},
            {"action_selection", s.action_selection},
            {"attempt", s.attempt}};
}

HighlightSubmission submission_from_json(const Json& j) {
    HighlightSubmission s;
    s.session_id = j.value("session_id", std::string{});
    s.identity_selection = j.at("identity_selection").get<std::vector<TextSpan>>();
    s.action_selection = j.at("action_selection").get<std::vector<TextSpan>>();
    s.attempt = j.value("attempt", 1);
    return s;
}

}  // namespace counterquill::brainstorm
