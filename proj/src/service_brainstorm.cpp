#include <mutex>
#include <optional>

#include "counterquill/llm/prompts.hpp"
#include "counterquill/llm/yes_no.hpp"
#include "counterquill/stage_machine.hpp"
#include "service_internal.hpp"

namespace counterquill {

namespace {

bool is_gateway_failure(ErrorCode code) {
    return code == ErrorCode::timeout || code == ErrorCode::provider_error ||
           code == ErrorCode::exhausted_retries;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

}  // namespace

HighlightPractice Service::start_highlight_practice(const std::string& session_id) {
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    std::vector<PendingEvent> events;
    advance(rec, Action::start_highlight_practice, events);
    commit(std::move(events));
    HighlightPractice out{corpus_.get(rec.session.instance_id), brainstorm::tutorial()};
    out.instance.gold_identity.clear();
    out.instance.gold_action.clear();
    return out;
}

brainstorm::EquivalenceFeedback Service::grade_with_gateway(
    const HateSpeechInstance& instance, const brainstorm::HighlightSubmission& submission) {
    const auto inputs = brainstorm::equivalence_inputs(instance, submission);
    const auto oracle = brainstorm::oracle_grade(instance, submission);

    brainstorm::EquivalenceFeedback fb;
    fb.source = brainstorm::FeedbackSource::model;
    bool reachable = true;
    auto grade = [&](llm::EquivalenceTarget target, bool fallback) {
        if (reachable) {
            const auto request = llm::render_equivalence_prompt(inputs, target);
            // One re-ask on an unparseable reply, then the oracle decides.
            for (int ask = 0; ask < 2; ++ask) {
                try {
                    return llm::parse_yes_no(gateway_->complete(request));
                } catch (const Error& e) {
                    if (is_gateway_failure(e.code())) {
                        reachable = false;
                        break;
                    }
                    if (e.code() != ErrorCode::unparseable) throw;
                }
            }
        }
        fb.source = brainstorm::FeedbackSource::oracle;
        return fallback;
    };
    fb.identity_equivalent = grade(llm::EquivalenceTarget::identity, oracle.identity_equivalent);
    fb.action_equivalent = grade(llm::EquivalenceTarget::action, oracle.action_equivalent);

    fb.feedback_text = brainstorm::templated_feedback(fb.identity_equivalent, fb.action_equivalent);
    if (!fb.both() && fb.source == brainstorm::FeedbackSource::model) {
        try {
            auto text = gateway_->complete(llm::render_highlight_feedback_prompt(
                inputs, fb.identity_equivalent, fb.action_equivalent));
            if (!blank(text)) fb.feedback_text = std::move(text);
        } catch (const Error& e) {
            if (!is_gateway_failure(e.code())) throw;
        }
    }
    return fb;
}

HighlightOutcome Service::submit_highlights(const std::string& session_id,
                                            std::vector<TextSpan> identity_selection,
                                            std::vector<TextSpan> action_selection) {
    std::optional<BusyGuard> busy;
    brainstorm::HighlightSubmission submission;
    const HateSpeechInstance* instance = nullptr;
    {
        std::unique_lock lock(mu_);
        const auto& rec = mutable_session(session_id);
        require_transition(rec.session.condition, rec.session.stage, Action::submit_highlights);
        instance = &corpus_.get(rec.session.instance_id);
        submission = {session_id, std::move(identity_selection), std::move(action_selection),
                      static_cast<int>(rec.highlights.size()) + 1};
        brainstorm::check_submission(*instance, submission);
        busy.emplace(*this, session_id);
    }

    auto feedback = grade_with_gateway(*instance, submission);

    std::unique_lock lock(mu_);
    const auto& rec = state_.session(session_id);
    std::vector<PendingEvent> events;
    events.push_back({session_id, EventKind::highlight,
                      {{"submission", brainstorm::to_json_value(submission)},
                       {"feedback", brainstorm::to_json_value(feedback)}}});
    TransitionGuards guards;
    guards.highlights_resolved = feedback.both() || submission.attempt >= options_.attempt_cap;
    const Stage stage = advance(rec, Action::submit_highlights, events, guards);
    commit(std::move(events));
    busy->release_locked();
    return {submission.attempt, std::move(feedback), stage};
}

DiffView Service::view_diff(const std::string& session_id) const {
    std::shared_lock lock(mu_);
    const auto& rec = state_.session(session_id);
    if (rec.highlights.empty()) {
        fail(ErrorCode::not_found, "session " + session_id + " has no highlight submission yet");
    }
    const auto& latest = rec.highlights.back().submission;
    const auto& inst = corpus_.get(rec.session.instance_id);
    return {latest.attempt,        inst.text,         latest.identity_selection,
            latest.action_selection, inst.gold_identity, inst.gold_action};
}

brainstorm::Suggestion Service::submit_answer(const std::string& session_id, int question,
                                              const std::string& text) {
    const auto q_text = llm::brainstorm_question(question);
    if (blank(text)) fail(ErrorCode::invalid_argument, "answer text is empty");
    std::optional<BusyGuard> busy;
    {
        std::unique_lock lock(mu_);
        const auto& rec = mutable_session(session_id);
        require_transition(rec.session.condition, rec.session.stage, Action::submit_answer);
        busy.emplace(*this, session_id);
    }

    auto suggestion =
        gateway_->complete(llm::render_suggestion_prompt({std::string(q_text), text}));
    if (blank(suggestion)) throw ProviderError(200, "empty suggestion");

    std::unique_lock lock(mu_);
    commit({{session_id, EventKind::answer,
             {{"question", question}, {"text", text}, {"suggestion", suggestion}}}});
    busy->release_locked();
    return state_.session(session_id).suggestions.at(question);
}

Note Service::take_note(const std::string& session_id, NoteSource source, const std::string& text) {
    if (blank(text)) fail(ErrorCode::invalid_argument, "note text is empty");
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    require_transition(rec.session.condition, rec.session.stage, Action::take_note);

    const std::string* reference = nullptr;
    switch (source) {
        case NoteSource::question1:
        case NoteSource::question2: {
            const int q = source == NoteSource::question1 ? 1 : 2;
            auto it = rec.suggestions.find(q);
            if (it != rec.suggestions.end()) reference = &it->second.text;
            break;
        }
        case NoteSource::highlight_feedback:
            if (!rec.highlights.empty()) reference = &rec.highlights.back().feedback.feedback_text;
            break;
    }
    if (!reference) {
        fail(ErrorCode::provenance,
             "nothing to take a note from: no " + std::string(to_string(source)) + " text yet");
    }
    if (reference->find(text) == std::string::npos) {
        fail(ErrorCode::provenance, "note text is not part of the " +
                                        std::string(to_string(source)) + " text");
    }
    Note note{state_.next_note_id(), session_id, source, text, 0};
    commit({{session_id, EventKind::note, note}});
    return state_.session(session_id).notes.back();
}

std::vector<Note> Service::list_notes(const std::string& session_id) const {
    std::shared_lock lock(mu_);
    return state_.session(session_id).notes;
}

}  // namespace counterquill
