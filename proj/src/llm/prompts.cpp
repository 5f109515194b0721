#include "counterquill/llm/prompts.hpp"

#include "counterquill/error.hpp"

namespace counterquill::llm {

namespace {

void require_text(std::string_view value, const char* field) {
    if (value.empty()) {
        fail(ErrorCode::invalid_argument, std::string(field) + " must not be empty");
    }
}

void check_inputs(const EquivalencePromptInputs& in) {
    require_text(in.hatespeech, "hatespeech");
    require_text(in.identity, "identity");
    require_text(in.action, "action");
    require_text(in.user_selection_1, "user_selection_1");
    require_text(in.user_selection_2, "user_selection_2");
}

std::string single_quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string equivalence_context(const EquivalencePromptInputs& in) {
    return "The correct individual or a group's identity and dehumanizing action in the speech "
           "text " +
           single_quoted(in.hatespeech) + " is: " + single_quoted(in.identity) + " and " + single_quoted(in.action);
}

std::string equivalence_query(const EquivalencePromptInputs& in, EquivalenceTarget target) {
    std::string query = "If the user selects " + single_quoted(in.user_selection_1) +
                        " as identity and " + single_quoted(in.user_selection_2) +
                        " as dehumanizing action, ";
    switch (target) {
        case EquivalenceTarget::both:
            query += "are they semantically equivalent to the correct answer?";
            break;
        case EquivalenceTarget::identity:
            query += "is the identity selection semantically equivalent to the correct identity?";
            break;
        case EquivalenceTarget::action:
            query +=
                "is the dehumanizing action selection semantically equivalent to the correct "
                "dehumanizing action?";
            break;
    }
    return query;
}

std::string block(std::string_view tag, std::string_view body) {
    return "<" + std::string(tag) + ">\n" + std::string(body) + "\n</" + std::string(tag) + ">";
}

}  // namespace

std::string_view brainstorm_question(int number) {
    if (number == 1) return question_1;
    if (number == 2) return question_2;
    fail(ErrorCode::invalid_argument, "brainstorm question must be 1 or 2");
}

std::string RewriteMode::name() const {
    struct Visitor {
        std::string operator()(const RewriteGrammar&) const { return "grammar"; }
        std::string operator()(const RewriteEmpathetic&) const { return "empathetic"; }
        std::string operator()(const RewriteUseNote& m) const {
            return "use_note_" + std::to_string(m.note_index);
        }
        std::string operator()(const RewriteCustom&) const { return "custom"; }
    };
    return std::visit(Visitor{}, variant);
}

Json to_json_value(const RewriteMode& mode) {
    if (const auto* n = std::get_if<RewriteUseNote>(&mode.variant)) {
        return Json{{"kind", "use_note"}, {"note_index", n->note_index}};
    }
    if (const auto* c = std::get_if<RewriteCustom>(&mode.variant)) {
        return Json{{"kind", "custom"}, {"instruction", c->instruction}};
    }
    return Json{{"kind", mode.name()}};
}

RewriteMode rewrite_mode_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        fail(ErrorCode::invalid_argument, "rewrite mode needs a string 'kind'");
    }
    const auto kind = j["kind"].get<std::string>();
    if (kind == "grammar") return RewriteMode::grammar();
    if (kind == "empathetic") return RewriteMode::empathetic();
    if (kind == "use_note") {
        int index = j.value("note_index", 0);
        if (index != 1 && index != 2) {
            fail(ErrorCode::invalid_argument, "use_note needs note_index 1 or 2");
        }
        return RewriteMode::use_note(index);
    }
    if (kind == "custom") {
        auto instruction = j.value("instruction", std::string{});
        require_text(instruction, "custom instruction");
        return RewriteMode::custom(std::move(instruction));
    }
    fail(ErrorCode::invalid_argument, "unknown rewrite mode '" + kind + "'");
}

bool operator==(const RewriteMode& a, const RewriteMode& b) {
    return to_json_value(a) == to_json_value(b);
}

CompletionRequest render_equivalence_prompt(const EquivalencePromptInputs& inputs,
                                            EquivalenceTarget target) {
    check_inputs(inputs);
    Json content = {{"context", equivalence_context(inputs)},
                    {"query", equivalence_query(inputs, target)},
                    {"responseOptions", {"Yes", "No"}}};
    CompletionRequest req;
    req.purpose = Purpose::equivalence;
    req.temperature = equivalence_temperature;
    req.max_output_tokens = 16;
    req.messages = {
        {Role::system, "You grade highlighting exercises. Reply with exactly one word: Yes or No."},
        {Role::assistant, content.dump(2)},
    };
    return req;
}

CompletionRequest render_suggestion_prompt(const SuggestionPromptInputs& inputs) {
    require_text(inputs.question, "question");
    require_text(inputs.user_answer, "user_answer");
    const std::string task =
        "Your task is to generate thoughtful and constructive counterspeech suggestions in "
        "response to a user's answer to the question: " +
        single_quoted(inputs.question) +
        "\n"
        "    - Begin by respectfully acknowledging the user's contribution and perspective. If "
        "the user expresses offensive or harmful views, kindly explain why such statements are "
        "problematic.\n"
        "    - Next, provide a concise and insightful evaluation of the user's response. Offer "
        "either a thought-provoking observation that encourages further reflection or "
        "constructive feedback that helps the user refine their argument.\n"
        "    - Conclude by offering clear and actionable advice on crafting effective "
        "counterspeech related to the issue at hand.";
    CompletionRequest req;
    req.purpose = Purpose::suggestion;
    req.temperature = generation_temperature;
    req.max_output_tokens = 400;
    req.messages = {
        {Role::assistant, Json{{"task", task}}.dump(2)},
        {Role::user, "User's answer:\n" + inputs.user_answer},
    };
    return req;
}

CompletionRequest render_highlight_feedback_prompt(const EquivalencePromptInputs& inputs,
                                                   bool identity_ok, bool action_ok) {
    check_inputs(inputs);
    std::string missed;
    if (!identity_ok) missed += "identity";
    if (!action_ok) missed += missed.empty() ? "dehumanizing action" : " and dehumanizing action";
    if (missed.empty()) missed = "none";
    std::string body =
        "Highlighting feedback request.\n" + equivalence_context(inputs) + "\n" +
        "The user selected " + single_quoted(inputs.user_selection_1) + " as identity and " +
        single_quoted(inputs.user_selection_2) + " as dehumanizing action.\n" +
        "Incorrect selections: " + missed + "\n" +
        "Write two or three sentences of kind, corrective feedback that helps the user see what "
        "the incorrect selections missed without revealing the answer word for word.";
    CompletionRequest req;
    req.purpose = Purpose::suggestion;
    req.temperature = generation_temperature;
    req.max_output_tokens = 200;
    req.messages = {
        {Role::system, "You are a supportive tutor teaching people to analyse hate speech."},
        {Role::user, body},
    };
    return req;
}

CompletionRequest render_rewrite_prompt(const RewriteMode& mode, std::string_view selected_text,
                                        const std::vector<Note>& notes,
                                        std::string_view draft_context, std::int64_t attempt) {
    require_text(selected_text, "selected_text");

    std::string instruction;
    std::string extra;
    struct Visitor {
        const std::vector<Note>& notes;
        std::string& instruction;
        std::string& extra;
        void operator()(const RewriteGrammar&) const {
            instruction =
                "Correct the grammar, spelling and punctuation of the selected text. Keep its "
                "wording and tone otherwise unchanged.";
        }
        void operator()(const RewriteEmpathetic&) const {
            instruction =
                "Rewrite the selected text in an empathetic tone. Humanize the people targeted by "
                "the hate speech, acknowledge the harm the statement causes, and invite the "
                "speaker to take the targets' perspective. Stay respectful and "
                "non-confrontational.";
        }
        void operator()(const RewriteUseNote& m) const {
            if (m.note_index < 1 || static_cast<std::size_t>(m.note_index) > notes.size()) {
                fail(ErrorCode::not_found,
                     "brainstorming note " + std::to_string(m.note_index) + " does not exist");
            }
            instruction =
                "Revise the selected text so that it draws on the brainstorming note below.";
            extra = block("note", notes[static_cast<std::size_t>(m.note_index) - 1].text) + "\n";
        }
        void operator()(const RewriteCustom& m) const {
            require_text(m.instruction, "custom instruction");
            instruction = "Revise the selected text to meet the user's writing goal below.";
            extra = block("instruction", m.instruction) + "\n";
        }
    };
    std::visit(Visitor{notes, instruction, extra}, mode.variant);

    std::string notes_text;
    for (std::size_t i = 0; i < notes.size(); ++i) {
        notes_text += std::to_string(i + 1) + ". " + notes[i].text + "\n";
    }
    if (notes_text.empty()) notes_text = "(none)\n";

    std::string body = "Mode: " + mode.name() + "\n" + "Task: " + instruction + "\n" + extra +
                       "Rules:\n"
                       "- Transform ONLY the text inside the <selection> tags.\n"
                       "- Preserve the meaning of the selection.\n"
                       "- Reply with the rewritten selection only, without quotes or commentary.\n"
                       "Brainstorming notes:\n" +
                       notes_text + "Draft context:\n" + block("draft", draft_context) + "\n" +
                       std::string(selection_open) + std::string(selected_text) +
                       std::string(selection_close);

    CompletionRequest req;
    req.purpose = Purpose::rewrite;
    req.temperature = generation_temperature;
    req.max_output_tokens = 600;
    req.seed = attempt;
    req.messages = {
        {Role::system,
         "You are a writing assistant helping people write empathy-based counterspeech that "
         "responds to hate speech."},
        {Role::user, body},
    };
    return req;
}

}  // namespace counterquill::llm
