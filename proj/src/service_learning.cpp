#include <mutex>

#include "counterquill/stage_machine.hpp"
#include "service_internal.hpp"

namespace counterquill {

StudySession Service::start_learning(const std::string& session_id) {
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    std::vector<PendingEvent> events;
    advance(rec, Action::start_learning, events);
    commit(std::move(events));
    return state_.session(session_id).session;
}

learning::QuizResult Service::grade_quiz(const std::string& session_id,
                                         const std::vector<std::string>& answers) {
    const auto labels = learning::parse_answers(answers);
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    // A resubmitted identical sheet (say, a client retry) gets the stored grade.
    if (rec.session.stage == Stage::quiz_done && rec.quiz && rec.quiz->answers == labels) {
        return *rec.quiz;
    }
    std::vector<PendingEvent> events;
    const auto result = learning::grade_answers(session_id, labels);
    events.push_back({session_id, EventKind::quiz, learning::to_json_value(result)});
    advance(rec, Action::grade_quiz, events);
    commit(std::move(events));
    return *state_.session(session_id).quiz;
}

}  // namespace counterquill
