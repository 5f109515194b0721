#include <mutex>
#include <optional>

#include "counterquill/llm/prompts.hpp"
#include "counterquill/stage_machine.hpp"
#include "counterquill/utf8.hpp"
#include "service_internal.hpp"

namespace counterquill {

namespace {

struct GatewayFailure {
    ErrorCode code;
    std::string message;
};

PendingEvent exchange_event(const cowrite::RewriteExchange& ex, std::string_view op) {
    return {ex.session_id, EventKind::rewrite, {{"op", op}, {"exchange", cowrite::to_json_value(ex)}}};
}

const Draft& current_draft(const SessionRecord& rec) {
    const auto* d = rec.current_draft();
    if (!d) fail(ErrorCode::not_found, "session " + rec.session.id + " has no draft yet");
    return *d;
}

// Calls the gateway; provider failures are returned instead of thrown so the
// caller can record the discarded exchange first.
std::string call_rewrite(const llm::Gateway& gateway, const llm::CompletionRequest& request,
                         std::optional<GatewayFailure>& failure) {
    try {
        return gateway.complete(request);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::timeout && e.code() != ErrorCode::provider_error &&
            e.code() != ErrorCode::exhausted_retries) {
            throw;
        }
        failure = GatewayFailure{e.code(), e.what()};
        return {};
    }
}

}  // namespace

Draft Service::open_writing(const std::string& session_id) {
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    TransitionGuards guards;
    guards.both_answers = rec.both_answers();
    std::vector<PendingEvent> events;
    advance(rec, Action::open_writing, events, guards);
    std::string content;
    if (rec.session.condition == Condition::counterquill) {
        content = cowrite::seed_draft(rec.answers.at(1).text, rec.answers.at(2).text);
    }
    events.push_back({session_id, EventKind::draft_save,
                      {{"revision", rec.drafts.size() + 1}, {"content", content}}});
    commit(std::move(events));
    return *state_.session(session_id).current_draft();
}

Draft Service::save_draft(const std::string& session_id, const std::string& content) {
    utf8::length(content);  // rejects malformed UTF-8
    std::unique_lock lock(mu_);
    const auto& rec = mutable_session(session_id);
    require_transition(rec.session.condition, rec.session.stage, Action::edit_draft);
    const auto revision = current_draft(rec).revision + 1;
    std::vector<PendingEvent> events;
    if (const auto* pending = state_.pending_exchange(session_id)) {
        auto ex = *pending;
        ex.status = cowrite::ExchangeStatus::discarded;
        ex.error = "superseded by draft revision " + std::to_string(revision);
        events.push_back(exchange_event(ex, "status"));
    }
    events.push_back(
        {session_id, EventKind::draft_save, {{"revision", revision}, {"content", content}}});
    commit(std::move(events));
    return *state_.session(session_id).current_draft();
}

Draft Service::get_draft(const std::string& session_id) const {
    std::shared_lock lock(mu_);
    return current_draft(state_.session(session_id));
}

std::vector<Draft> Service::draft_history(const std::string& session_id) const {
    std::shared_lock lock(mu_);
    return state_.session(session_id).drafts;
}

cowrite::RewriteExchange Service::get_exchange(const std::string& exchange_id) const {
    std::shared_lock lock(mu_);
    return state_.exchange(exchange_id);
}

cowrite::RewriteExchange Service::request_rewrite(const std::string& session_id, std::size_t start,
                                                  std::size_t end, const llm::RewriteMode& mode) {
    std::optional<BusyGuard> busy;
    cowrite::RewriteExchange ex;
    llm::CompletionRequest request;
    {
        std::unique_lock lock(mu_);
        const auto& rec = mutable_session(session_id);
        require_transition(rec.session.condition, rec.session.stage, Action::edit_draft);
        if (const auto* pending = state_.pending_exchange(session_id)) {
            fail(ErrorCode::busy, "rewrite " + pending->id + " is still pending; insert or retry it");
        }
        const auto& draft = current_draft(rec);
        cowrite::check_selection(draft.content, start, end);
        ex.session_id = session_id;
        ex.start = start;
        ex.end = end;
        ex.revision = draft.revision;
        ex.mode = mode;
        ex.selected_text = utf8::slice(draft.content, start, end);
        request = llm::render_rewrite_prompt(mode, ex.selected_text, rec.notes, draft.content, 1);
        busy.emplace(*this, session_id);
    }

    std::optional<GatewayFailure> failure;
    ex.candidate_text = call_rewrite(*gateway_, request, failure);

    std::unique_lock lock(mu_);
    ex.id = state_.next_exchange_id();
    if (failure) {
        ex.status = cowrite::ExchangeStatus::discarded;
        ex.error = failure->message;
    }
    commit({exchange_event(ex, "requested")});
    busy->release_locked();
    if (failure) throw Error(failure->code, failure->message);
    return state_.exchange(ex.id);
}

cowrite::RewriteExchange Service::retry_rewrite(const std::string& exchange_id) {
    std::optional<BusyGuard> busy;
    cowrite::RewriteExchange previous;
    cowrite::RewriteExchange next;
    llm::CompletionRequest request;
    {
        std::unique_lock lock(mu_);
        previous = state_.exchange(exchange_id);
        const auto& rec = mutable_session(previous.session_id);
        require_transition(rec.session.condition, rec.session.stage, Action::edit_draft);
        if (previous.status != cowrite::ExchangeStatus::pending) {
            fail(ErrorCode::not_pending, "rewrite " + exchange_id + " is " +
                                             std::string(cowrite::to_string(previous.status)));
        }
        next = previous;
        next.attempt = previous.attempt + 1;
        next.candidate_text.clear();
        next.error.clear();
        request = llm::render_rewrite_prompt(next.mode, next.selected_text, rec.notes,
                                             current_draft(rec).content, next.attempt);
        busy.emplace(*this, previous.session_id);
    }

    std::optional<GatewayFailure> failure;
    next.candidate_text = call_rewrite(*gateway_, request, failure);

    std::unique_lock lock(mu_);
    next.id = state_.next_exchange_id();
    std::vector<PendingEvent> events;
    if (failure) {
        // The earlier candidate stays usable.
        next.status = cowrite::ExchangeStatus::discarded;
        next.error = failure->message;
    } else {
        previous.status = cowrite::ExchangeStatus::retried;
        events.push_back(exchange_event(previous, "status"));
    }
    events.push_back(exchange_event(next, "requested"));
    commit(std::move(events));
    busy->release_locked();
    if (failure) throw Error(failure->code, failure->message);
    return state_.exchange(next.id);
}

Draft Service::insert_result(const std::string& exchange_id) {
    std::unique_lock lock(mu_);
    auto ex = state_.exchange(exchange_id);
    const auto& rec = mutable_session(ex.session_id);
    require_transition(rec.session.condition, rec.session.stage, Action::edit_draft);
    if (ex.status == cowrite::ExchangeStatus::inserted ||
        ex.status == cowrite::ExchangeStatus::retried) {
        fail(ErrorCode::not_pending,
             "rewrite " + exchange_id + " is " + std::string(cowrite::to_string(ex.status)));
    }
    const auto& draft = current_draft(rec);
    if (draft.revision != ex.revision) {
        fail(ErrorCode::conflict, "rewrite " + exchange_id + " was made for draft revision " +
                                      std::to_string(ex.revision) + " but the draft is at revision " +
                                      std::to_string(draft.revision) + "; select the text again");
    }
    if (ex.status != cowrite::ExchangeStatus::pending) {
        fail(ErrorCode::not_pending,
             "rewrite " + exchange_id + " is " + std::string(cowrite::to_string(ex.status)));
    }
    const auto content = cowrite::splice(draft.content, ex.start, ex.end, ex.candidate_text);
    ex.status = cowrite::ExchangeStatus::inserted;
    commit({exchange_event(ex, "status"),
            {ex.session_id,
             EventKind::draft_save,
             {{"revision", draft.revision + 1}, {"content", content}}}});
    return *state_.session(ex.session_id).current_draft();
}

}  // namespace counterquill
