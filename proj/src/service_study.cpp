#include <algorithm>
#include <mutex>

#include "counterquill/stage_machine.hpp"
#include "service_internal.hpp"

namespace counterquill {

study::QuestionnaireResponse Service::capture_questionnaire(const std::string& session_id,
                                                            study::Instrument instrument,
                                                            const std::vector<int>& items) {
    const auto checked = study::check_items(items);
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    if (rec.questionnaires.count(instrument)) {
        fail(ErrorCode::duplicate, std::string(study::to_string(instrument)) +
                                       " questionnaire already captured for session " + session_id);
    }
    TransitionGuards guards;
    guards.questionnaire_finished = rec.questionnaires.size() + 1 == 2;
    std::vector<PendingEvent> events;
    if (const auto* pending = state_.pending_exchange(session_id)) {
        auto ex = *pending;
        ex.status = cowrite::ExchangeStatus::discarded;
        ex.error = "writing stage closed";
        events.push_back({session_id, EventKind::rewrite,
                          {{"op", "status"}, {"exchange", cowrite::to_json_value(ex)}}});
    }
    events.push_back({session_id, EventKind::questionnaire,
                      {{"instrument", study::to_string(instrument)}, {"items", checked}}});
    advance(rec, Action::capture_questionnaire, events, guards);
    commit(std::move(events));
    return state_.session(session_id).questionnaires.at(instrument);
}

std::vector<study::DatasetRow> Service::export_dataset() const {
    std::shared_lock lock(mu_);
    // Latest session per (participant, condition); earlier ones were restarts.
    std::map<std::pair<std::string, Condition>, const SessionRecord*> latest;
    for (const auto& id : state_.session_order) {
        const auto& rec = state_.sessions.at(id);
        latest[{rec.session.participant_id, rec.session.condition}] = &rec;
    }
    std::vector<const Participant*> participants;
    for (const auto& [id, p] : state_.participants) participants.push_back(&p);
    std::sort(participants.begin(), participants.end(),
              [](const Participant* a, const Participant* b) { return a->index < b->index; });

    std::vector<study::DatasetRow> rows;
    for (const auto* p : participants) {
        const auto order = study::assign_condition_order(p->index);
        for (Condition c : {order.first, order.second}) {
            auto it = latest.find({p->id, c});
            if (it == latest.end()) continue;
            const auto& rec = *it->second;
            study::DatasetRow row;
            row.participant_id = p->id;
            row.participant_index = p->index;
            row.condition = c;
            row.condition_position = c == order.first ? 1 : 2;
            row.first_condition = order.first;
            row.session_id = rec.session.id;
            row.instance_id = rec.session.instance_id;
            row.stage = rec.session.stage;
            if (rec.quiz) row.quiz_correct = rec.quiz->n_correct;
            if (auto q = rec.questionnaires.find(study::Instrument::nasa_tlx);
                q != rec.questionnaires.end()) {
                for (std::size_t i = 0; i < row.tlx.size(); ++i) row.tlx[i] = q->second.items[i];
            }
            if (auto q = rec.questionnaires.find(study::Instrument::custom);
                q != rec.questionnaires.end()) {
                for (std::size_t i = 0; i < row.custom.size(); ++i) row.custom[i] = q->second.items[i];
            }
            for (std::size_t i = 0; i < row.seconds.size(); ++i) {
                auto t = rec.session.stage_timings.find(all_stages[i]);
                if (t != rec.session.stage_timings.end()) row.seconds[i] = t->second;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace counterquill
