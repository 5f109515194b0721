#pragma once

#include <optional>
#include <string_view>

#include "counterquill/domain.hpp"

namespace counterquill {

// Everything a client can ask a session to do. Read-only requests are not
// actions and never consult the machine.
enum class Action {
    start_learning,
    grade_quiz,
    start_highlight_practice,
    submit_highlights,
    submit_answer,
    take_note,
    open_writing,
    edit_draft,  // save, request rewrite, insert, retry
    capture_questionnaire,
};

inline constexpr Action all_actions[] = {
    Action::start_learning,   Action::grade_quiz,    Action::start_highlight_practice,
    Action::submit_highlights, Action::submit_answer, Action::take_note,
    Action::open_writing,     Action::edit_draft,    Action::capture_questionnaire,
};

std::string_view to_string(Action a);

// Facts about the session that some transitions are guarded on.
struct TransitionGuards {
    // Highlight grading found both kinds equivalent, or the attempt cap is hit.
    bool highlights_resolved = false;
    // Both reflective questions have stored answers.
    bool both_answers = false;
    // This questionnaire capture completes both instruments.
    bool questionnaire_finished = false;
};

// Legal orders:
//   counterquill: created → learning → quiz_done → brainstorm_highlight
//                 → brainstorm_qa → writing → questionnaire → complete
//   baseline:     created → writing → questionnaire → complete
// Returns the stage after `action`, or nullopt when the action is illegal.
std::optional<Stage> next_stage(Condition condition, Stage stage, Action action,
                                const TransitionGuards& guards = {});

// Like next_stage but throws Error(stage) with a readable message.
Stage require_transition(Condition condition, Stage stage, Action action,
                         const TransitionGuards& guards = {});

}  // namespace counterquill
