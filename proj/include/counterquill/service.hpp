#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "counterquill/brainstorm.hpp"
#include "counterquill/corpus.hpp"
#include "counterquill/cowrite.hpp"
#include "counterquill/event_log.hpp"
#include "counterquill/learning.hpp"
#include "counterquill/llm/gateway.hpp"
#include "counterquill/stage_machine.hpp"
#include "counterquill/state.hpp"
#include "counterquill/study.hpp"

namespace counterquill {

// Milliseconds since the epoch. Tests substitute a counter.
using Clock = std::function<Timestamp()>;
Clock system_clock();

struct ServiceOptions {
    int attempt_cap = brainstorm::default_attempt_cap;
    std::uint64_t assignment_seed = 0;
};

struct CreateSessionRequest {
    std::string participant_id;
    Condition condition = Condition::counterquill;
    std::optional<std::string> instance_id;          // picked per participant when absent
    std::optional<std::size_t> participant_index;    // next free index when absent
    std::map<std::string, std::string> demographics;  // only used on first enrolment
};

struct HighlightPractice {
    HateSpeechInstance instance;  // gold spans are stripped
    Json tutorial;
};

struct HighlightOutcome {
    int attempt = 1;
    brainstorm::EquivalenceFeedback feedback;
    Stage stage = Stage::brainstorm_highlight;
};

struct DiffView {
    int attempt = 1;
    std::string text;
    std::vector<TextSpan> user_identity;
    std::vector<TextSpan> user_action;
    std::vector<TextSpan> gold_identity;
    std::vector<TextSpan> gold_action;
};

// Binds the session modules to one event-sourced state. Every mutation is
// turned into events, appended to the log, then applied; construction replays
// the log, so provider calls are never repeated.
//
// Mutations take an exclusive lock. Operations that call the gateway mark
// the session busy and release the lock for the call; any other mutation of
// that session fails with Error(busy) until the call returns.
class Service {
public:
    Service(Corpus corpus, std::shared_ptr<llm::Gateway> gateway, std::unique_ptr<EventLog> log,
            ServiceOptions options = {}, Clock clock = system_clock());

    const Corpus& corpus() const { return corpus_; }
    const ServiceOptions& options() const { return options_; }

    StudySession create_session(const CreateSessionRequest& request);
    StudySession start_learning(const std::string& session_id);
    learning::QuizResult grade_quiz(const std::string& session_id,
                                    const std::vector<std::string>& answers);

    HighlightPractice start_highlight_practice(const std::string& session_id);
    HighlightOutcome submit_highlights(const std::string& session_id,
                                       std::vector<TextSpan> identity_selection,
                                       std::vector<TextSpan> action_selection);
    DiffView view_diff(const std::string& session_id) const;
    brainstorm::Suggestion submit_answer(const std::string& session_id, int question,
                                         const std::string& text);
    Note take_note(const std::string& session_id, NoteSource source, const std::string& text);
    std::vector<Note> list_notes(const std::string& session_id) const;

    Draft open_writing(const std::string& session_id);
    Draft save_draft(const std::string& session_id, const std::string& content);
    Draft get_draft(const std::string& session_id) const;
    std::vector<Draft> draft_history(const std::string& session_id) const;
    cowrite::RewriteExchange request_rewrite(const std::string& session_id, std::size_t start,
                                             std::size_t end, const llm::RewriteMode& mode);
    Draft insert_result(const std::string& exchange_id);
    cowrite::RewriteExchange retry_rewrite(const std::string& exchange_id);
    cowrite::RewriteExchange get_exchange(const std::string& exchange_id) const;

    study::QuestionnaireResponse capture_questionnaire(const std::string& session_id,
                                                       study::Instrument instrument,
                                                       const std::vector<int>& items);
    std::vector<study::DatasetRow> export_dataset() const;

    StudySession session(const std::string& session_id) const;
    // Everything a client needs to resume a session.
    Json session_view(const std::string& session_id) const;
    std::vector<StudySession> sessions() const;

    void flush();

private:
    class BusyGuard;

    // Caller holds the exclusive lock.
    void commit(std::vector<PendingEvent> events);
    const SessionRecord& mutable_session(const std::string& session_id) const;
    Stage advance(const SessionRecord& rec, Action action, std::vector<PendingEvent>& out,
                  const TransitionGuards& guards = {}) const;
    std::string instance_for(const std::string& participant_id) const;

    brainstorm::EquivalenceFeedback grade_with_gateway(const HateSpeechInstance& instance,
                                                       const brainstorm::HighlightSubmission& s);

    Corpus corpus_;
    std::shared_ptr<llm::Gateway> gateway_;
    std::unique_ptr<EventLog> log_;
    ServiceOptions options_;
    Clock clock_;

    mutable std::shared_mutex mu_;
    StudyState state_;
    std::set<std::string> busy_;
};

Json to_json_value(const DiffView& d);
Json to_json_value(const HighlightPractice& p);
Json to_json_value(const study::QuestionnaireResponse& r);

}  // namespace counterquill
