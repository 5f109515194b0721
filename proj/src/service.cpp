#include <algorithm>
#include <chrono>
#include <mutex>

#include "counterquill/stage_machine.hpp"
#include "service_internal.hpp"

namespace counterquill {

Clock system_clock() {
    return [] {
        using namespace std::chrono;
        return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
    };
}

Service::Service(Corpus corpus, std::shared_ptr<llm::Gateway> gateway,
                 std::unique_ptr<EventLog> log, ServiceOptions options, Clock clock)
    : corpus_(std::move(corpus)),
      gateway_(std::move(gateway)),
      log_(log ? std::move(log) : std::make_unique<EventLog>()),
      options_(options),
      clock_(std::move(clock)) {
    if (!gateway_) fail(ErrorCode::config, "service needs a gateway");
    if (options_.attempt_cap < 1) fail(ErrorCode::config, "attempt cap must be at least 1");
    std::vector<std::size_t> offsets;
    const auto events = log_->load(&offsets);
    for (std::size_t i = 0; i < events.size(); ++i) {
        try {
            apply(state_, events[i]);
        } catch (const Error& e) {
            throw CorruptLogError(i + 1, offsets[i], e.what());
        }
    }
    for (const auto& [id, rec] : state_.sessions) {
        if (!corpus_.contains(rec.session.instance_id)) {
            fail(ErrorCode::config, "session " + id + " refers to instance " +
                                        rec.session.instance_id + ", which the corpus lacks");
        }
    }
}

void Service::commit(std::vector<PendingEvent> events) {
    // Never stamp earlier than the log already does, so durations stay
    // non-negative across clock adjustments and restarts.
    const Timestamp now = std::max(clock_(), state_.last_timestamp);
    for (auto& p : events) {
        EventRecord e{state_.last_seq + 1, std::move(p.session_id), p.kind, std::move(p.payload),
                      now};
        apply(state_, e);
        log_->append(e);
    }
}

const SessionRecord& Service::mutable_session(const std::string& session_id) const {
    const auto& rec = state_.session(session_id);
    if (busy_.count(session_id)) {
        fail(ErrorCode::busy, "session " + session_id + " has a request in flight");
    }
    return rec;
}

Stage Service::advance(const SessionRecord& rec, Action action, std::vector<PendingEvent>& out,
                       const TransitionGuards& guards) const {
    const auto& s = rec.session;
    const Stage next = require_transition(s.condition, s.stage, action, guards);
    if (next != s.stage) {
        out.push_back({s.id, EventKind::stage_change,
                       {{"from", to_string(s.stage)}, {"to", to_string(next)}}});
    }
    return next;
}

std::string Service::instance_for(const std::string& participant_id) const {
    std::set<std::string> used;
    for (const auto& [id, rec] : state_.sessions) {
        if (rec.session.participant_id == participant_id) used.insert(rec.session.instance_id);
    }
    const auto order = study::instance_order(participant_id, corpus_, options_.assignment_seed);
    for (const auto& id : order) {
        if (!used.count(id)) return id;
    }
    if (order.empty()) fail(ErrorCode::insufficient_corpus, "the corpus is empty");
    return order.front();
}

StudySession Service::create_session(const CreateSessionRequest& request) {
    if (request.participant_id.empty()) fail(ErrorCode::invalid_argument, "participant_id is required");
    std::unique_lock lock(mu_);
    std::vector<PendingEvent> events;
    auto known = state_.participants.find(request.participant_id);
    if (known == state_.participants.end()) {
        Participant p{request.participant_id, state_.participants.size(), request.demographics};
        if (request.participant_index) p.index = *request.participant_index;
        for (const auto& [id, other] : state_.participants) {
            if (other.index == p.index) {
                fail(ErrorCode::conflict, "participant index " + std::to_string(p.index) +
                                              " already belongs to " + id);
            }
        }
        events.push_back({"", EventKind::participant_enrolled, {{"participant", p}}});
    } else if (request.participant_index && *request.participant_index != known->second.index) {
        fail(ErrorCode::conflict, "participant " + request.participant_id + " has index " +
                                      std::to_string(known->second.index));
    }
    std::string instance_id;
    if (request.instance_id) {
        instance_id = corpus_.get(*request.instance_id).id;
    } else {
        instance_id = instance_for(request.participant_id);
    }
    const auto id = state_.next_session_id();
    events.push_back({id, EventKind::session_created,
                      {{"participant_id", request.participant_id},
                       {"condition", to_string(request.condition)},
                       {"instance_id", instance_id}}});
    commit(std::move(events));
    return state_.session(id).session;
}

StudySession Service::session(const std::string& session_id) const {
    std::shared_lock lock(mu_);
    return state_.session(session_id).session;
}

std::vector<StudySession> Service::sessions() const {
    std::shared_lock lock(mu_);
    std::vector<StudySession> out;
    for (const auto& id : state_.session_order) out.push_back(state_.sessions.at(id).session);
    return out;
}

Json Service::session_view(const std::string& session_id) const {
    std::shared_lock lock(mu_);
    const auto& rec = state_.session(session_id);
    const auto& inst = corpus_.get(rec.session.instance_id);
    Json view;
    view["session"] = rec.session;
    view["instance"] = {{"id", inst.id}, {"text", inst.text}, {"theme", to_string(inst.theme)}};
    view["quiz"] = rec.quiz ? learning::to_json_value(*rec.quiz) : Json(nullptr);
    view["highlight_attempts"] = rec.highlights.size();
    view["latest_feedback"] =
        rec.highlights.empty() ? Json(nullptr) : brainstorm::to_json_value(rec.highlights.back().feedback);
    Json answers = Json::object();
    for (const auto& [q, a] : rec.answers) {
        answers[std::to_string(q)] = {{"text", a.text}, {"suggestion", rec.suggestions.at(q).text}};
    }
    view["answers"] = answers;
    view["notes"] = rec.notes;
    view["draft"] = rec.current_draft() ? Json(*rec.current_draft()) : Json(nullptr);
    const auto* pending = state_.pending_exchange(session_id);
    view["pending_rewrite"] = pending ? cowrite::to_json_value(*pending) : Json(nullptr);
    Json done = Json::array();
    for (const auto& [instrument, r] : rec.questionnaires) done.push_back(study::to_string(instrument));
    view["questionnaires"] = done;
    view["busy"] = busy_.count(session_id) != 0;
    return view;
}

void Service::flush() {
    std::unique_lock lock(mu_);
    log_->flush();
}

Json to_json_value(const DiffView& d) {
    return {{"attempt", d.attempt},
            {"text", d.text},
            {"user", {{"identity", d.user_identity}, {"action", d.user_action}}},
            {"gold", {{"identity", d.gold_identity}, {"action", d.gold_action}}}};
}

Json to_json_value(const HighlightPractice& p) {
    return {{"instance",
             {{"id", p.instance.id}, {"text", p.instance.text}, {"theme", to_string(p.instance.theme)}}},
            {"tutorial", p.tutorial}};
}

Json to_json_value(const study::QuestionnaireResponse& r) {
    return {{"session_id", r.session_id},
            {"instrument", study::to_string(r.instrument)},
            {"items", r.items},
            {"captured_at", r.captured_at}};
}

}  // namespace counterquill
