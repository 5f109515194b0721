#include <set>

#include "counterquill/llm/lexical.hpp"
#include "counterquill/llm/prompts.hpp"
#include "counterquill/llm/yes_no.hpp"
#include "support.hpp"

using namespace counterquill;
using namespace counterquill::llm;

namespace {

std::string all_text(const CompletionRequest& r) {
    std::string out;
    for (const auto& m : r.messages) out += m.content + "\n";
    return out;
}

bool contains(const std::string& hay, std::string_view needle) {
    return hay.find(needle) != std::string::npos;
}

const EquivalencePromptInputs jogging{
    "I saw a random black man jogging nearby our house today and now I feel unsafe walking "
    "around my own neighborhood.",
    "black man", "feel unsafe", "black man", "I feel unsafe"};

}  // namespace

TEST_CASE("equivalence prompt embeds all five placeholders") {
    auto r = render_equivalence_prompt(jogging);
    CHECK(r.purpose == Purpose::equivalence);
    CHECK(r.temperature == 0.0);
    // JSON escaping leaves these strings unchanged.
    auto text = all_text(r);
    CHECK(contains(text, jogging.hatespeech));
    CHECK(contains(text, "'black man' and 'feel unsafe'"));
    CHECK(contains(text, "selects 'black man' as identity and 'I feel unsafe' as dehumanizing action"));
    CHECK(contains(text, "\"Yes\""));
    CHECK(contains(text, "semantically equivalent"));
    CHECK_NOTHROW(check_request(r));

    auto bad = jogging;
    bad.user_selection_1.clear();
    CHECK_ERROR_CODE(render_equivalence_prompt(bad), ErrorCode::invalid_argument);
}

TEST_CASE("renderers are pure and injective") {
    cqtest::Rng rng(17);
    std::set<std::string> eq;
    std::set<std::string> sug;
    std::set<std::string> rw;
    std::set<std::tuple<std::string, std::string, std::string, std::string, std::string>> eq_in;
    for (int i = 0; i < 400; ++i) {
        auto word = [&] { return "w" + std::to_string(cqtest::uniform(rng, 0, 6)); };
        EquivalencePromptInputs in{word(), word(), word(), word(), word()};
        auto r = render_equivalence_prompt(in);
        CHECK(serialize(r) == serialize(render_equivalence_prompt(in)));
        if (eq_in.insert({in.hatespeech, in.identity, in.action, in.user_selection_1, in.user_selection_2}).second) {
            CHECK(eq.insert(serialize(r)).second);
        } else {
            CHECK(eq.count(serialize(r)));
        }
    }
    for (int q : {1, 2}) {
        for (int i = 0; i < 50; ++i) {
            auto r = render_suggestion_prompt({std::string(brainstorm_question(q)), "answer " + std::to_string(i)});
            CHECK(sug.insert(serialize(r)).second);
        }
    }
    const std::vector<RewriteMode> modes = {RewriteMode::grammar(), RewriteMode::empathetic(),
                                            RewriteMode::use_note(1), RewriteMode::use_note(2),
                                            RewriteMode::custom("shorter"), RewriteMode::custom("longer")};
    std::vector<Note> notes = {{"n-1", "s", NoteSource::question1, "first note", 0},
                               {"n-2", "s", NoteSource::question2, "second note", 0}};
    for (const auto& m : modes) {
        for (const std::string sel : {"abc", "abd"}) {
            for (std::int64_t attempt : {1, 2}) {
                CHECK(rw.insert(serialize(render_rewrite_prompt(m, sel, notes, "ctx", attempt))).second);
            }
        }
    }
}

TEST_CASE("suggestion prompt carries the question verbatim and the three-part structure") {
    auto r = render_suggestion_prompt({std::string(question_1), "They are lazy."});
    auto text = all_text(r);
    CHECK(contains(text, question_1));
    CHECK(contains(text, "They are lazy."));
    CHECK(contains(text, "acknowledging"));
    CHECK(contains(text, "evaluation"));
    CHECK(contains(text, "actionable advice on crafting effective counterspeech"));
    CHECK(r.temperature == doctest::Approx(0.7));
    CHECK_ERROR_CODE(render_suggestion_prompt({std::string(question_1), ""}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(brainstorm_question(3), ErrorCode::invalid_argument);
}

TEST_CASE("rewrite prompt behaviour") {
    auto r = render_rewrite_prompt(RewriteMode::grammar(), "their wrong", {}, "ctx");
    auto text = all_text(r);
    CHECK(contains(text, "<selection>\ntheir wrong\n</selection>"));
    CHECK(contains(text, "ONLY"));
    CHECK(contains(text, "Preserve the meaning"));
    CHECK(r.purpose == Purpose::rewrite);

    std::vector<Note> one = {{"n-1", "s", NoteSource::question1, "only note", 0}};
    CHECK_ERROR_CODE(render_rewrite_prompt(RewriteMode::use_note(2), "x", one, "ctx"), ErrorCode::not_found);
    CHECK(contains(all_text(render_rewrite_prompt(RewriteMode::use_note(1), "x", one, "ctx")), "only note"));

    auto emp = all_text(render_rewrite_prompt(RewriteMode::empathetic(), "x", one, "ctx"));
    CHECK(contains(emp, "empathetic tone"));
    CHECK(contains(emp, "non-confrontational"));

    auto custom = all_text(render_rewrite_prompt(RewriteMode::custom("make it rhyme"), "x", {}, "ctx"));
    CHECK(contains(custom, "make it rhyme"));
    CHECK_ERROR_CODE(render_rewrite_prompt(RewriteMode::grammar(), "", {}, "ctx"), ErrorCode::invalid_argument);
}

TEST_CASE("rewrite mode JSON") {
    for (const auto& m : {RewriteMode::grammar(), RewriteMode::empathetic(), RewriteMode::use_note(2),
                          RewriteMode::custom("x")}) {
        CHECK(rewrite_mode_from_json(to_json_value(m)) == m);
    }
    CHECK_ERROR_CODE(rewrite_mode_from_json(Json{{"kind", "use_note"}, {"note_index", 3}}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(rewrite_mode_from_json(Json{{"kind", "custom"}, {"instruction", ""}}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(rewrite_mode_from_json(Json{{"kind", "poem"}}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(rewrite_mode_from_json(Json::array()), ErrorCode::invalid_argument);
}

TEST_CASE("parse_yes_no") {
    CHECK(parse_yes_no("Yes, they are semantically equivalent."));
    CHECK_FALSE(parse_yes_no("no"));
    CHECK_FALSE(parse_yes_no("  \"No.\""));
    CHECK(parse_yes_no("YES"));
    CHECK(parse_yes_no("I would say yes overall"));
    CHECK_FALSE(parse_yes_no("Answer: no, not really, yes is wrong"));
    CHECK_ERROR_CODE(parse_yes_no("The selections differ."), ErrorCode::unparseable);
    CHECK_ERROR_CODE(parse_yes_no(""), ErrorCode::unparseable);
    // Words that merely contain the tokens do not count.
    CHECK_ERROR_CODE(parse_yes_no("Nobody knows; yesterday was nice"), ErrorCode::unparseable);
}

TEST_CASE("parse_yes_no never answers without a token") {
    cqtest::Rng rng(29);
    const std::string alphabet = "abcdefgkmpqrtuvwxz .,!\n";
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        for (std::size_t n = cqtest::uniform(rng, 0, 30); n > 0; --n) s += alphabet[cqtest::uniform(rng, 0, alphabet.size() - 1)];
        CHECK_ERROR_CODE(parse_yes_no(s), ErrorCode::unparseable);
    }
}

TEST_CASE("lexical oracle") {
    CHECK(normalized_tokens("I feel, UNSAFE!") == std::set<std::string>{"i", "feel", "unsafe"});
    CHECK(lexically_equivalent("unsafe", "feel unsafe"));        // subset
    CHECK(lexically_equivalent("I feel unsafe", "feel unsafe"));  // Jaccard 2/3
    CHECK_FALSE(lexically_equivalent("jogging nearby", "feel unsafe"));
    CHECK_FALSE(lexically_equivalent("", "feel unsafe"));
    CHECK_FALSE(lexically_equivalent("...", "feel unsafe"));
    // Exactly 0.5: {a,b} vs {b,c} is 1/3, {a,b,c} vs {a,b,d}... use {a,b} vs {a,b,c,d} (subset) and
    // {a,b,x} vs {a,b,c}: 2/4 = 0.5 reaches the threshold.
    CHECK(token_jaccard({"a", "b", "x"}, {"a", "b", "c"}) == 0.5);
    CHECK(lexically_equivalent("a b x", "a b c"));
    CHECK_FALSE(lexically_equivalent("a x y", "a b c"));  // 1/5
    CHECK(token_jaccard({}, {}) == 0.0);
}
