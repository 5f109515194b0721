#include "counterquill/state.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "counterquill/error.hpp"

namespace counterquill {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 10> kind_names{{
    {EventKind::participant_enrolled, "participant_enrolled"},
    {EventKind::session_created, "session_created"},
    {EventKind::stage_change, "stage_change"},
    {EventKind::quiz, "quiz"},
    {EventKind::highlight, "highlight"},
    {EventKind::answer, "answer"},
    {EventKind::note, "note"},
    {EventKind::draft_save, "draft_save"},
    {EventKind::rewrite, "rewrite"},
    {EventKind::questionnaire, "questionnaire"},
}};

[[noreturn]] void inconsistent(const EventRecord& e, const std::string& why) {
    fail(ErrorCode::invalid_argument, "event " + std::to_string(e.seq) + " (" +
                                          std::string(to_string(e.kind)) + "): " + why);
}

SessionRecord& session_of(StudyState& state, const EventRecord& e) {
    auto it = state.sessions.find(e.session_id);
    if (it == state.sessions.end()) inconsistent(e, "unknown session '" + e.session_id + "'");
    return it->second;
}

void apply_stage_change(SessionRecord& rec, const EventRecord& e) {
    const auto from = parse_stage(e.payload.at("from").get<std::string>());
    const auto to = parse_stage(e.payload.at("to").get<std::string>());
    auto& s = rec.session;
    if (s.stage != from) {
        inconsistent(e, "session is in stage " + std::string(to_string(s.stage)) + ", not " +
                            std::string(to_string(from)));
    }
    if (s.stage_timings.count(from)) inconsistent(e, "stage duration already recorded");
    if (e.timestamp < s.stage_entered_at) inconsistent(e, "timestamp precedes stage entry");
    s.stage_timings[from] = static_cast<double>(e.timestamp - s.stage_entered_at) / 1000.0;
    s.stage = to;
    s.stage_entered_at = e.timestamp;
}

void apply_rewrite(StudyState& state, SessionRecord& rec, const EventRecord& e) {
    const auto op = e.payload.at("op").get<std::string>();
    auto exchange = cowrite::exchange_from_json(e.payload.at("exchange"));
    if (exchange.session_id != e.session_id) inconsistent(e, "exchange belongs to another session");
    if (op == "requested") {
        if (state.exchanges.count(exchange.id)) inconsistent(e, "duplicate exchange id");
        exchange.created_at = e.timestamp;
        if (exchange.status == cowrite::ExchangeStatus::pending) {
            if (!rec.pending_exchange_id.empty()) inconsistent(e, "another exchange is pending");
            rec.pending_exchange_id = exchange.id;
        }
        rec.exchange_ids.push_back(exchange.id);
        state.exchanges.emplace(exchange.id, std::move(exchange));
        return;
    }
    auto it = state.exchanges.find(exchange.id);
    if (it == state.exchanges.end()) inconsistent(e, "unknown exchange '" + exchange.id + "'");
    if (op != "status") inconsistent(e, "unknown rewrite op '" + op + "'");
    it->second.status = exchange.status;
    it->second.error = exchange.error;
    if (rec.pending_exchange_id == exchange.id && exchange.status != cowrite::ExchangeStatus::pending) {
        rec.pending_exchange_id.clear();
    }
}

}  // namespace

std::string_view to_string(EventKind k) {
    for (const auto& [v, name] : kind_names) {
        if (v == k) return name;
    }
    return "unknown";
}

EventKind parse_event_kind(std::string_view s) {
    for (const auto& [v, name] : kind_names) {
        if (name == s) return v;
    }
    fail(ErrorCode::invalid_argument, "unknown event kind '" + std::string(s) + "'");
}

Json to_json_value(const EventRecord& e) {
    return {{"seq", e.seq},
            {"session_id", e.session_id},
            {"kind", to_string(e.kind)},
            {"payload", e.payload},
            {"ts", e.timestamp}};
}

EventRecord event_from_json(const Json& j) {
    try {
        EventRecord e;
        e.seq = j.at("seq").get<std::uint64_t>();
        e.session_id = j.at("session_id").get<std::string>();
        e.kind = parse_event_kind(j.at("kind").get<std::string>());
        e.payload = j.at("payload");
        e.timestamp = j.at("ts").get<Timestamp>();
        return e;
    } catch (const Json::exception& ex) {
        fail(ErrorCode::invalid_argument, std::string("malformed event: ") + ex.what());
    }
}

const SessionRecord& StudyState::session(const std::string& id) const {
    auto it = sessions.find(id);
    if (it == sessions.end()) fail(ErrorCode::not_found, "no session '" + id + "'");
    return it->second;
}

const cowrite::RewriteExchange& StudyState::exchange(const std::string& id) const {
    auto it = exchanges.find(id);
    if (it == exchanges.end()) fail(ErrorCode::not_found, "no rewrite exchange '" + id + "'");
    return it->second;
}

const cowrite::RewriteExchange* StudyState::pending_exchange(const std::string& session_id) const {
    auto it = sessions.find(session_id);
    if (it == sessions.end() || it->second.pending_exchange_id.empty()) return nullptr;
    return &exchanges.at(it->second.pending_exchange_id);
}

std::string StudyState::next_session_id() const { return "s-" + std::to_string(sessions.size() + 1); }
std::string StudyState::next_note_id() const { return "n-" + std::to_string(note_count + 1); }
std::string StudyState::next_exchange_id() const {
    return "rw-" + std::to_string(exchanges.size() + 1);
}

void apply(StudyState& state, const EventRecord& e) {
    if (e.seq <= state.last_seq) inconsistent(e, "sequence number does not increase");
    try {
        switch (e.kind) {
            case EventKind::participant_enrolled: {
                auto p = e.payload.at("participant").get<Participant>();
                if (state.participants.count(p.id)) inconsistent(e, "participant already enrolled");
                for (const auto& [id, other] : state.participants) {
                    if (other.index == p.index) inconsistent(e, "participant index already used");
                }
                state.participants.emplace(p.id, std::move(p));
                break;
            }
            case EventKind::session_created: {
                if (state.sessions.count(e.session_id)) inconsistent(e, "session already exists");
                SessionRecord rec;
                auto& s = rec.session;
                s.id = e.session_id;
                s.participant_id = e.payload.at("participant_id").get<std::string>();
                s.condition = parse_condition(e.payload.at("condition").get<std::string>());
                s.instance_id = e.payload.at("instance_id").get<std::string>();
                s.stage = Stage::created;
                s.created_at = s.updated_at = s.stage_entered_at = e.timestamp;
                if (!state.participants.count(s.participant_id)) {
                    inconsistent(e, "unknown participant '" + s.participant_id + "'");
                }
                state.sessions.emplace(e.session_id, std::move(rec));
                state.session_order.push_back(e.session_id);
                break;
            }
            case EventKind::stage_change:
                apply_stage_change(session_of(state, e), e);
                break;
            case EventKind::quiz:
                session_of(state, e).quiz = learning::quiz_result_from_json(e.payload);
                break;
            case EventKind::highlight: {
                auto& rec = session_of(state, e);
                brainstorm::HighlightAttempt attempt;
                attempt.submission = brainstorm::submission_from_json(e.payload.at("submission"));
                attempt.feedback = brainstorm::feedback_from_json(e.payload.at("feedback"));
                attempt.at = e.timestamp;
                if (attempt.submission.attempt != static_cast<int>(rec.highlights.size()) + 1) {
                    inconsistent(e, "highlight attempts out of order");
                }
                rec.highlights.push_back(std::move(attempt));
                break;
            }
            case EventKind::answer: {
                auto& rec = session_of(state, e);
                int q = e.payload.at("question").get<int>();
                if (q != 1 && q != 2) inconsistent(e, "question must be 1 or 2");
                rec.answers[q] = {q, e.payload.at("text").get<std::string>()};
                rec.suggestions[q] = {e.session_id, q, e.payload.at("suggestion").get<std::string>(),
                                      e.timestamp};
                break;
            }
            case EventKind::note: {
                auto& rec = session_of(state, e);
                auto note = e.payload.get<Note>();
                note.created_at = e.timestamp;
                rec.notes.push_back(std::move(note));
                ++state.note_count;
                break;
            }
            case EventKind::draft_save: {
                auto& rec = session_of(state, e);
                Draft d{e.session_id, e.payload.at("content").get<std::string>(),
                        e.payload.at("revision").get<std::uint64_t>(), e.timestamp};
                if (d.revision != rec.drafts.size() + 1) inconsistent(e, "draft revision gap");
                rec.drafts.push_back(std::move(d));
                break;
            }
            case EventKind::rewrite:
                apply_rewrite(state, session_of(state, e), e);
                break;
            case EventKind::questionnaire: {
                auto& rec = session_of(state, e);
                study::QuestionnaireResponse r;
                r.session_id = e.session_id;
                r.instrument = study::parse_instrument(e.payload.at("instrument").get<std::string>());
                r.items = study::check_items(e.payload.at("items").get<std::vector<int>>());
                r.captured_at = e.timestamp;
                if (rec.questionnaires.count(r.instrument)) inconsistent(e, "duplicate questionnaire");
                rec.questionnaires.emplace(r.instrument, r);
                break;
            }
        }
    } catch (const Json::exception& ex) {
        inconsistent(e, std::string("malformed payload: ") + ex.what());
    }
    if (!e.session_id.empty()) {
        auto it = state.sessions.find(e.session_id);
        if (it != state.sessions.end()) it->second.session.updated_at = e.timestamp;
    }
    state.last_seq = e.seq;
    state.last_timestamp = std::max(state.last_timestamp, e.timestamp);
}

StudyState replay(const std::vector<EventRecord>& events) {
    StudyState state;
    for (const auto& e : events) apply(state, e);
    return state;
}

}  // namespace counterquill
