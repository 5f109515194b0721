#include <algorithm>

#include "counterquill/learning.hpp"
#include "support.hpp"

using namespace counterquill;
using namespace counterquill::learning;

namespace {

const std::array<char, quiz_length> key = {'C', 'B', 'D', 'B'};

std::array<char, quiz_length> labels(const std::string& s) {
    std::vector<std::string> v;
    for (char c : s) v.emplace_back(1, c);
    return parse_answers(v);
}

}  // namespace

TEST_CASE("curriculum shape and key withholding") {
    const auto& c = get_curriculum();
    REQUIRE(c.sections.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(c.sections[i].track == (i < 3 ? Track::hate_speech : Track::counterspeech));
        CHECK(c.sections[i].ordinal == static_cast<int>(i % 3) + 1);
        CHECK(!c.sections[i].body.empty());
    }
    REQUIRE(c.questions.size() == 4);
    for (const auto& q : c.questions) CHECK(q.options.size() == 4);
    const auto dumped = to_json_value(c).dump();
    CHECK(dumped.find("\"correct") == std::string::npos);
    CHECK(dumped.find("\"answer") == std::string::npos);
    CHECK(dumped.find("\"key\"") == std::string::npos);
    CHECK(&get_curriculum() == &c);
    CHECK(to_json_value(get_curriculum()) == to_json_value(c));
}

TEST_CASE("parse_curriculum rejects malformed documents") {
    auto doc = to_json_value(get_curriculum());
    CHECK(to_json_value(parse_curriculum(doc)) == doc);
    doc["sections"].erase(0);
    CHECK_ERROR_CODE(parse_curriculum(doc), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(parse_curriculum(Json::object()), ErrorCode::invalid_argument);
}

TEST_CASE("grading examples") {
    CHECK(grade_answers("s", labels("CBDB")).n_correct == 4);
    CHECK(grade_answers("s", labels("AAAA")).n_correct == 0);
    CHECK_ERROR_CODE(labels("cbdb"), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(parse_answers({"C", "B", "D"}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(parse_answers({"C", "B", "D", "E"}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(parse_answers({"C", "B", "D", "BB"}), ErrorCode::invalid_argument);
}

TEST_CASE("grading is idempotent and monotone") {
    const std::string opts = "ABCD";
    for (int code = 0; code < 256; ++code) {
        std::array<char, quiz_length> a{};
        for (std::size_t i = 0; i < quiz_length; ++i) a[i] = opts[(code >> (2 * i)) & 3];
        auto r = grade_answers("s", a);
        CHECK(r == grade_answers("s", a));
        int expect = 0;
        for (std::size_t i = 0; i < quiz_length; ++i) {
            CHECK(r.correct[i] == (a[i] == key[i]));
            expect += a[i] == key[i];
        }
        CHECK(r.n_correct == expect);
        for (std::size_t i = 0; i < quiz_length; ++i) {
            if (a[i] == key[i]) continue;
            auto fixed = a;
            fixed[i] = key[i];
            CHECK(grade_answers("s", fixed).n_correct == r.n_correct + 1);
        }
        CHECK(quiz_result_from_json(to_json_value(r)) == r);
    }
}

TEST_CASE("accuracy aggregate") {
    std::vector<int> scores(15, 4);
    for (int s : {2, 2, 3, 3, 3}) scores.push_back(s);
    CHECK(accuracy_aggregate(scores) == doctest::Approx(91.25).epsilon(1e-12));
    CHECK(accuracy_aggregate(std::vector<int>{4}) == 100.0);
    CHECK(accuracy_aggregate(std::vector<int>{0}) == 0.0);
    CHECK_ERROR_CODE(accuracy_aggregate(std::vector<int>{}), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(accuracy_aggregate(std::vector<QuizResult>{}), ErrorCode::invalid_argument);

    cqtest::Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        std::vector<int> v(cqtest::uniform(rng, 1, 30));
        for (auto& x : v) x = static_cast<int>(cqtest::uniform(rng, 0, 4));
        const double a = accuracy_aggregate(v);
        CHECK(a >= 0.0);
        CHECK(a <= 100.0);
        auto p = v;
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(accuracy_aggregate(p) == doctest::Approx(a).epsilon(1e-12));
    }
}
