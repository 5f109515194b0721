#include "counterquill/cowrite.hpp"
#include "support.hpp"

using namespace counterquill;
using namespace counterquill::cowrite;

TEST_CASE("splice examples") {
    CHECK(splice("keep THIS keep", 5, 9, "that") == "keep that keep");
    CHECK(splice("héllo wörld", 6, 11, "there") == "héllo there");
    CHECK(splice("abc", 1, 1, "X") == "aXbc");
    CHECK(splice("abc", 0, 3, "") == "");
    CHECK_ERROR_CODE(splice("abc", 2, 1, "x"), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(splice("abc", 1, 4, "x"), ErrorCode::invalid_argument);
}

TEST_CASE("splice changes only the selected region") {
    cqtest::Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        const auto content = cqtest::random_codepoints(rng, cqtest::uniform(rng, 0, 40));
        const auto replacement = cqtest::random_codepoints(rng, cqtest::uniform(rng, 0, 10));
        const auto n = content.size();
        const auto start = cqtest::uniform(rng, 0, n);
        const auto end = cqtest::uniform(rng, start, n);
        const auto out = utf8::decode(splice(utf8::encode(content), start, end, utf8::encode(replacement)));
        REQUIRE(out.size() == n - (end - start) + replacement.size());
        CHECK(out.substr(0, start) == content.substr(0, start));
        CHECK(out.substr(start, replacement.size()) == replacement);
        CHECK(out.substr(start + replacement.size()) == content.substr(end));
    }
}

TEST_CASE("selection checks") {
    CHECK_NOTHROW(check_selection("héllo", 0, 5));
    CHECK_ERROR_CODE(check_selection("héllo", 0, 6), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(check_selection("héllo", 2, 2), ErrorCode::invalid_argument);
}

TEST_CASE("seed draft joins answers with a blank line") {
    CHECK(seed_draft("one", "two") == "one\n\ntwo");
}

TEST_CASE("exchange JSON round trips") {
    RewriteExchange e;
    e.id = "rw-1";
    e.session_id = "s-1";
    e.start = 3;
    e.end = 9;
    e.revision = 2;
    e.mode = llm::RewriteMode::use_note(2);
    e.selected_text = "sel";
    e.candidate_text = "cand";
    e.status = ExchangeStatus::discarded;
    e.attempt = 2;
    e.error = "boom";
    e.created_at = 77;
    CHECK(exchange_from_json(to_json_value(e)) == e);
    for (auto s : {ExchangeStatus::pending, ExchangeStatus::inserted, ExchangeStatus::retried, ExchangeStatus::discarded}) {
        CHECK(parse_exchange_status(to_string(s)) == s);
    }
}
