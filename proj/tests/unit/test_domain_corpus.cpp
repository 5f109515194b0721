#include <sstream>

#include "counterquill/corpus.hpp"
#include "counterquill/spans.hpp"
#include "support.hpp"

using namespace counterquill;

TEST_CASE("enum names round trip") {
    for (Theme t : all_themes) CHECK(parse_theme(to_string(t)) == t);
    for (Stage s : all_stages) CHECK(parse_stage(to_string(s)) == s);
    for (Condition c : all_conditions) CHECK(parse_condition(to_string(c)) == c);
    CHECK_ERROR_CODE(parse_theme("weather"), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(parse_note_source("q3"), ErrorCode::invalid_argument);
}

TEST_CASE("bundled corpus holds the eighteen annotated rows") {
    auto corpus = Corpus::bundled();
    CHECK(corpus.size() == 18);
    for (const auto& inst : corpus.instances()) {
        CHECK_MESSAGE(check_instance(inst).empty(), inst.id);
        CHECK(!inst.gold_identity.empty());
        CHECK(!inst.gold_action.empty());
    }
    for (Theme t : all_themes) CHECK(corpus.by_theme(t).size() >= 3);
}

TEST_CASE("worked example gold spans") {
    auto corpus = Corpus::bundled();
    const auto& jog = corpus.get("a1-03");
    REQUIRE(jog.gold_identity.size() == 1);
    CHECK(span_text(jog.text, jog.gold_identity[0]) == "black man");
    CHECK(span_text(jog.text, jog.gold_action[0]) == "feel unsafe");
    // The curly quotes in a1-04 sit before the action span, so byte and
    // codepoint offsets differ there.
    const auto& curly = corpus.get("a1-04");
    CHECK(span_text(curly.text, curly.gold_action[0]) ==
          "I get uncomfortable because they're not feminine at all");
    CHECK(utf8::length(curly.text) < curly.text.size());
}

TEST_CASE("corpus parsing rejects invalid instances") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return Corpus::parse_jsonl(in);
    };
    const std::string ok =
        R"({"id":"x","text":"abc def","theme":"race","gold_identity":[{"start":0,"end":3,"kind":"identity"}],"gold_action":[{"start":4,"end":7,"kind":"action"}]})";
    CHECK(parse(ok + "\n\n").size() == 1);
    CHECK_ERROR_CODE(parse(ok + "\n" + ok), ErrorCode::invalid_argument);  // duplicate id
    CHECK_ERROR_CODE(
        parse(R"({"id":"x","text":"abc","theme":"race","gold_identity":[{"start":0,"end":9,"kind":"identity"}],"gold_action":[{"start":0,"end":1,"kind":"action"}]})"),
        ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(
        parse(R"({"id":"x","text":"abc","theme":"race","gold_identity":[],"gold_action":[{"start":0,"end":1,"kind":"action"}]})"),
        ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(
        parse(R"({"id":"x","text":"abc","theme":"race","gold_identity":[{"start":0,"end":1,"kind":"action"}],"gold_action":[{"start":0,"end":1,"kind":"action"}]})"),
        ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(parse("{not json"), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(Corpus::bundled().get("nope"), ErrorCode::not_found);
}

TEST_CASE("domain JSON round trips") {
    HateSpeechInstance h{"id1", "héllo wörld", Theme::religion,
                         {{0, 5, SpanKind::identity}}, {{6, 11, SpanKind::action}}};
    CHECK(Json(h).get<HateSpeechInstance>() == h);
    Participant p{"P7", 6, {{"age", "25-34"}}};
    CHECK(Json(p).get<Participant>() == p);
    Note n{"n-1", "s-1", NoteSource::highlight_feedback, "text", 42};
    CHECK(Json(n).get<Note>() == n);
}
