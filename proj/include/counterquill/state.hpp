#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "counterquill/brainstorm.hpp"
#include "counterquill/cowrite.hpp"
#include "counterquill/domain.hpp"
#include "counterquill/learning.hpp"
#include "counterquill/study.hpp"

namespace counterquill {

enum class EventKind {
    participant_enrolled,
    session_created,
    stage_change,
    quiz,
    highlight,
    answer,
    note,
    draft_save,
    rewrite,
    questionnaire,
};

std::string_view to_string(EventKind k);
EventKind parse_event_kind(std::string_view s);

// Immutable once appended; seq strictly increases within one log.
struct EventRecord {
    std::uint64_t seq = 0;
    std::string session_id;
    EventKind kind = EventKind::stage_change;
    Json payload;
    Timestamp timestamp = 0;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

Json to_json_value(const EventRecord& e);
// Throws Error(invalid_argument) on a malformed record.
EventRecord event_from_json(const Json& j);

// An event before it is sequenced and timestamped.
struct PendingEvent {
    std::string session_id;
    EventKind kind;
    Json payload;
};

// Everything known about one session, rebuilt purely from its events.
struct SessionRecord {
    StudySession session;
    std::optional<learning::QuizResult> quiz;
    std::vector<brainstorm::HighlightAttempt> highlights;
    std::map<int, brainstorm::BrainstormAnswer> answers;
    std::map<int, brainstorm::Suggestion> suggestions;
    std::vector<Note> notes;
    std::vector<Draft> drafts;  // revision r at index r - 1
    std::vector<std::string> exchange_ids;
    std::string pending_exchange_id;  // at most one at a time
    std::map<study::Instrument, study::QuestionnaireResponse> questionnaires;

    const Draft* current_draft() const { return drafts.empty() ? nullptr : &drafts.back(); }
    bool both_answers() const { return answers.count(1) && answers.count(2); }
};

struct StudyState {
    std::map<std::string, SessionRecord> sessions;
    std::vector<std::string> session_order;  // creation order
    std::map<std::string, Participant> participants;
    std::map<std::string, cowrite::RewriteExchange> exchanges;
    std::size_t note_count = 0;
    std::uint64_t last_seq = 0;
    Timestamp last_timestamp = 0;

    // Throw Error(not_found).
    const SessionRecord& session(const std::string& id) const;
    const cowrite::RewriteExchange& exchange(const std::string& id) const;

    const cowrite::RewriteExchange* pending_exchange(const std::string& session_id) const;

    std::string next_session_id() const;
    std::string next_note_id() const;
    std::string next_exchange_id() const;
};

// The only way state changes. Throws Error(invalid_argument) when the event
// does not fit the state it is applied to.
void apply(StudyState& state, const EventRecord& event);

StudyState replay(const std::vector<EventRecord>& events);

}  // namespace counterquill
