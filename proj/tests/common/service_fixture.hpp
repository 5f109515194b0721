#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "counterquill/llm/gateway.hpp"
#include "counterquill/service.hpp"

namespace fixtures {

// A clock that moves one second per commit.
inline counterquill::Clock ticking_clock(counterquill::Timestamp start = 1'700'000'000'000) {
    auto now = std::make_shared<std::atomic<counterquill::Timestamp>>(start);
    return [now] { return now->fetch_add(1000); };
}

// Retries without real sleeping.
inline counterquill::llm::Timer instant_timer() {
    counterquill::llm::Timer t;
    t.sleep = [](std::chrono::milliseconds) {};
    return t;
}

inline std::shared_ptr<counterquill::llm::Gateway> mock_gateway(
    std::shared_ptr<counterquill::llm::Provider> provider) {
    return std::make_shared<counterquill::llm::Gateway>(std::move(provider),
                                                        counterquill::llm::RetryPolicy{}, instant_timer());
}

// Highlights on the worked example (a1-03) that grade as fully equivalent.
inline constexpr std::size_t jog_identity[2] = {15, 24};  // "black man"
inline constexpr std::size_t jog_action[2] = {64, 77};    // "I feel unsafe"
inline constexpr std::size_t jog_wrong[2] = {25, 39};     // "jogging nearby"

// Walks a counterquill session on a1-03 up to brainstorm_qa.
inline std::string counterquill_to_qa(counterquill::Service& svc, const std::string& participant) {
    using namespace counterquill;
    CreateSessionRequest req;
    req.participant_id = participant;
    req.condition = Condition::counterquill;
    req.instance_id = "a1-03";
    auto s = svc.create_session(req);
    svc.start_learning(s.id);
    svc.grade_quiz(s.id, {"C", "B", "D", "B"});
    svc.start_highlight_practice(s.id);
    svc.submit_highlights(s.id, {{jog_identity[0], jog_identity[1], SpanKind::identity}},
                          {{jog_action[0], jog_action[1], SpanKind::action}});
    return s.id;
}

inline std::string counterquill_to_writing(counterquill::Service& svc, const std::string& participant) {
    auto id = counterquill_to_qa(svc, participant);
    svc.submit_answer(id, 1, "It assumes black men are dangerous.");
    svc.submit_answer(id, 2, "They may feel unwelcome in their own neighborhood.");
    svc.open_writing(id);
    return id;
}

}  // namespace fixtures
