#include <algorithm>
#include <set>
#include <tuple>

#include "counterquill/spans.hpp"
#include "support.hpp"

using namespace counterquill;

TEST_CASE("utf8 round trip over random codepoint strings") {
    cqtest::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        auto cps = cqtest::random_codepoints(rng, cqtest::uniform(rng, 0, 40));
        auto bytes = utf8::encode(cps);
        CHECK(utf8::decode(bytes) == cps);
        CHECK(utf8::length(bytes) == cps.size());
        CHECK(utf8::byte_offset(bytes, cps.size()) == bytes.size());
    }
}

TEST_CASE("malformed utf8 is rejected") {
    CHECK_ERROR_CODE(utf8::decode("\xC3"), ErrorCode::invalid_argument);        // truncated
    CHECK_ERROR_CODE(utf8::decode("\xC0\xAF"), ErrorCode::invalid_argument);    // overlong
    CHECK_ERROR_CODE(utf8::decode("\xED\xA0\x80"), ErrorCode::invalid_argument);  // surrogate
    CHECK_ERROR_CODE(utf8::decode("\x80"), ErrorCode::invalid_argument);
    CHECK_ERROR_CODE(utf8::decode("\xF4\x90\x80\x80"), ErrorCode::invalid_argument);  // > U+10FFFF
}

TEST_CASE("slicing is by codepoint") {
    CHECK(utf8::slice("héllo", 1, 3) == "él");
    CHECK(utf8::slice("abc", 1, 2) == "b");
    CHECK(utf8::slice("a😀b", 1, 2) == "😀");
    CHECK_ERROR_CODE(utf8::slice("abc", 2, 5), ErrorCode::out_of_range);
}

TEST_CASE("span_text examples") {
    CHECK(span_text("feel unsafe walking", {0, 11, SpanKind::action}) == "feel unsafe");
    CHECK(span_text("abc", {1, 2, SpanKind::identity}) == "b");
    CHECK(span_text("héllo", {1, 3, SpanKind::identity}) == "él");
    CHECK_ERROR_CODE(span_text("abc", {2, 5, SpanKind::identity}), ErrorCode::out_of_range);
    CHECK_ERROR_CODE(span_text("abc", {2, 2, SpanKind::identity}), ErrorCode::out_of_range);
}

TEST_CASE("span_text length equals span length in codepoints") {
    cqtest::Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        auto text = cqtest::random_text(rng, 30);
        auto n = utf8::length(text);
        if (n == 0) continue;
        auto start = cqtest::uniform(rng, 0, n - 1);
        auto end = cqtest::uniform(rng, start + 1, n);
        auto slice = span_text(text, {start, end, SpanKind::identity});
        CHECK(utf8::length(slice) == end - start);
        // Independent oracle: slice the decoded codepoints.
        CHECK(slice == utf8::encode(utf8::decode(text).substr(start, end - start)));
    }
}

TEST_CASE("validate_spans examples") {
    CHECK(validate_spans("abc", {{0, 2, SpanKind::identity}}).empty());
    auto v = validate_spans("abc", {{2, 5, SpanKind::identity}});
    REQUIRE(v.size() == 1);
    CHECK(v[0].reason == SpanViolation::Reason::out_of_bounds);
    v = validate_spans("abc", {{0, 2, SpanKind::identity}, {1, 3, SpanKind::identity}});
    REQUIRE(v.size() == 1);
    CHECK(v[0].reason == SpanViolation::Reason::overlap);
    // Different kinds may overlap.
    CHECK(validate_spans("abc", {{0, 2, SpanKind::identity}, {1, 3, SpanKind::action}}).empty());
    // Touching spans do not overlap.
    CHECK(validate_spans("abcd", {{0, 2, SpanKind::action}, {2, 4, SpanKind::action}}).empty());
    v = validate_spans("abc", {{2, 2, SpanKind::action}});
    REQUIRE(v.size() == 1);
    CHECK(v[0].reason == SpanViolation::Reason::empty_or_inverted);
    // Bounds are codepoints, not bytes: "héllo" has 5 codepoints and 6 bytes.
    CHECK(validate_spans("héllo", {{0, 5, SpanKind::identity}}).size() == 0);
    CHECK(validate_spans("héllo", {{0, 6, SpanKind::identity}}).size() == 1);
}

namespace {

// Brute force over all pairs; shares nothing with the sweep.
std::set<std::tuple<int, std::size_t, std::size_t, int, std::size_t, std::size_t>> brute_force(
    std::size_t n, const std::vector<TextSpan>& spans) {
    std::set<std::tuple<int, std::size_t, std::size_t, int, std::size_t, std::size_t>> out;
    auto key = [](const TextSpan& s) { return std::tuple(static_cast<int>(s.kind), s.start, s.end); };
    for (const auto& s : spans) {
        if (s.start >= s.end) {
            out.insert({0, s.start, s.end, static_cast<int>(s.kind), 0, 0});
        } else if (s.end > n) {
            out.insert({1, s.start, s.end, static_cast<int>(s.kind), 0, 0});
        }
    }
    for (std::size_t i = 0; i < spans.size(); ++i) {
        for (std::size_t j = i + 1; j < spans.size(); ++j) {
            const auto& a = spans[i];
            const auto& b = spans[j];
            if (a.kind != b.kind || a.start >= a.end || b.start >= b.end) continue;
            if (std::max(a.start, b.start) < std::min(a.end, b.end)) {
                const auto& later = key(a) < key(b) ? b : a;
                out.insert({2, later.start, later.end, static_cast<int>(later.kind), 0, 0});
            }
        }
    }
    return out;
}

std::set<std::tuple<int, std::size_t, std::size_t, int, std::size_t, std::size_t>> summarize(
    const std::vector<SpanViolation>& v) {
    std::set<std::tuple<int, std::size_t, std::size_t, int, std::size_t, std::size_t>> out;
    for (const auto& x : v) {
        out.insert({static_cast<int>(x.reason), x.span.start, x.span.end, static_cast<int>(x.span.kind), 0, 0});
    }
    return out;
}

}  // namespace

TEST_CASE("validate_spans agrees with pairwise brute force and ignores order") {
    cqtest::Rng rng(23);
    for (int iter = 0; iter < 2000; ++iter) {
        auto text = cqtest::random_text(rng, 12);
        const auto n = utf8::length(text);
        std::vector<TextSpan> spans(cqtest::uniform(rng, 0, 5));
        for (auto& s : spans) {
            s.start = cqtest::uniform(rng, 0, n + 2);
            s.end = cqtest::uniform(rng, 0, n + 2);
            s.kind = cqtest::uniform(rng, 0, 1) ? SpanKind::identity : SpanKind::action;
        }
        auto got = validate_spans(text, spans);
        CHECK(summarize(got) == brute_force(n, spans));
        auto shuffled = spans;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(validate_spans(text, shuffled) == got);
    }
}
