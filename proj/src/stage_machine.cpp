#include "counterquill/stage_machine.hpp"

#include <string>

#include "counterquill/error.hpp"

namespace counterquill {

std::string_view to_string(Action a) {
    switch (a) {
        case Action::start_learning: return "start_learning";
        case Action::grade_quiz: return "grade_quiz";
        case Action::start_highlight_practice: return "start_highlight_practice";
        case Action::submit_highlights: return "submit_highlights";
        case Action::submit_answer: return "submit_answer";
        case Action::take_note: return "take_note";
        case Action::open_writing: return "open_writing";
        case Action::edit_draft: return "edit_draft";
        case Action::capture_questionnaire: return "capture_questionnaire";
    }
    return "unknown";
}

namespace {

std::optional<Stage> counterquill_next(Stage stage, Action action, const TransitionGuards& g) {
    switch (action) {
        case Action::start_learning:
            if (stage == Stage::created) return Stage::learning;
            break;
        case Action::grade_quiz:
            if (stage == Stage::learning) return Stage::quiz_done;
            break;
        case Action::start_highlight_practice:
            if (stage == Stage::quiz_done) return Stage::brainstorm_highlight;
            break;
        case Action::submit_highlights:
            if (stage == Stage::brainstorm_highlight) {
                return g.highlights_resolved ? Stage::brainstorm_qa : Stage::brainstorm_highlight;
            }
            break;
        case Action::submit_answer:
            if (stage == Stage::brainstorm_qa) return stage;
            break;
        case Action::take_note:
            if (stage == Stage::brainstorm_highlight || stage == Stage::brainstorm_qa) return stage;
            break;
        case Action::open_writing:
            if (stage == Stage::brainstorm_qa && g.both_answers) return Stage::writing;
            break;
        case Action::edit_draft:
            if (stage == Stage::writing) return stage;
            break;
        case Action::capture_questionnaire:
            if (stage == Stage::writing) return Stage::questionnaire;
            if (stage == Stage::questionnaire) {
                return g.questionnaire_finished ? Stage::complete : Stage::questionnaire;
            }
            break;
    }
    return std::nullopt;
}

std::optional<Stage> baseline_next(Stage stage, Action action, const TransitionGuards& g) {
    switch (action) {
        case Action::open_writing:
            if (stage == Stage::created) return Stage::writing;
            break;
        case Action::edit_draft:
            if (stage == Stage::writing) return stage;
            break;
        case Action::capture_questionnaire:
            if (stage == Stage::writing) return Stage::questionnaire;
            if (stage == Stage::questionnaire) {
                return g.questionnaire_finished ? Stage::complete : Stage::questionnaire;
            }
            break;
        default:
            break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Stage> next_stage(Condition condition, Stage stage, Action action,
                                const TransitionGuards& guards) {
    return condition == Condition::counterquill ? counterquill_next(stage, action, guards)
                                                : baseline_next(stage, action, guards);
}

Stage require_transition(Condition condition, Stage stage, Action action,
                         const TransitionGuards& guards) {
    if (auto next = next_stage(condition, stage, action, guards)) return *next;
    std::string why;
    if (condition == Condition::counterquill && action == Action::open_writing &&
        stage == Stage::brainstorm_qa && !guards.both_answers) {
        why = " (both brainstorm answers are required)";
    }
    fail(ErrorCode::stage, std::string("cannot ") + std::string(to_string(action)) + " in stage " +
                               std::string(to_string(stage)) + " for a " +
                               std::string(to_string(condition)) + " session" + why);
}

}  // namespace counterquill
