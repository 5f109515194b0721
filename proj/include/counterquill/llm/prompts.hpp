#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "counterquill/domain.hpp"
#include "counterquill/llm/messages.hpp"

namespace counterquill::llm {

inline constexpr double equivalence_temperature = 0.0;
inline constexpr double generation_temperature = 0.7;

// The two reflective brainstorming questions, verbatim.
inline constexpr std::string_view question_1 =
    "What negative stereotypes or assumptions about the targeted group or individual are "
    "suggested by the statement?";
inline constexpr std::string_view question_2 =
    "Consider the feelings and experiences of someone who identifies with the group mentioned "
    "in the statement. How might this comment affect their sense of safety, belonging, or "
    "self-esteem?";

// Throws Error(invalid_argument) unless number is 1 or 2.
std::string_view brainstorm_question(int number);

// Separator used when a kind has several spans (gold or selected).
inline constexpr std::string_view span_joiner = " | ";

struct EquivalencePromptInputs {
    std::string hatespeech;
    std::string identity;
    std::string action;
    std::string user_selection_1;  // selected as identity
    std::string user_selection_2;  // selected as dehumanizing action
};

// Which verdict the query asks for. `both` is the single joint question.
enum class EquivalenceTarget { both, identity, action };

struct SuggestionPromptInputs {
    std::string question;
    std::string user_answer;
};

struct RewriteGrammar {};
struct RewriteEmpathetic {};
struct RewriteUseNote {
    int note_index = 1;  // 1 or 2
};
struct RewriteCustom {
    std::string instruction;
};

struct RewriteMode {
    std::variant<RewriteGrammar, RewriteEmpathetic, RewriteUseNote, RewriteCustom> variant;

    static RewriteMode grammar() { return {RewriteGrammar{}}; }
    static RewriteMode empathetic() { return {RewriteEmpathetic{}}; }
    static RewriteMode use_note(int index) { return {RewriteUseNote{index}}; }
    static RewriteMode custom(std::string instruction) {
        return {RewriteCustom{std::move(instruction)}};
    }

    std::string name() const;
};

Json to_json_value(const RewriteMode& mode);
// Throws Error(invalid_argument) on unknown or malformed modes.
RewriteMode rewrite_mode_from_json(const Json& j);
bool operator==(const RewriteMode& a, const RewriteMode& b);

// All renderers throw Error(invalid_argument) when their inputs are empty.
CompletionRequest render_equivalence_prompt(const EquivalencePromptInputs& inputs,
                                            EquivalenceTarget target = EquivalenceTarget::both);

CompletionRequest render_suggestion_prompt(const SuggestionPromptInputs& inputs);

// Corrective feedback after a failed highlight attempt; names the kinds the
// user got wrong.
CompletionRequest render_highlight_feedback_prompt(const EquivalencePromptInputs& inputs,
                                                   bool identity_ok, bool action_ok);

// use_note(k) throws Error(not_found) when fewer than k notes exist.
CompletionRequest render_rewrite_prompt(const RewriteMode& mode, std::string_view selected_text,
                                        const std::vector<Note>& notes,
                                        std::string_view draft_context,
                                        std::int64_t attempt = 1);

// Markers the rewrite prompt wraps around the selection.
inline constexpr std::string_view selection_open = "<selection>\n";
inline constexpr std::string_view selection_close = "\n</selection>";

}  // namespace counterquill::llm
