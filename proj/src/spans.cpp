#include "counterquill/spans.hpp"

#include <algorithm>
#include <tuple>

#include "counterquill/error.hpp"
#include "counterquill/utf8.hpp"

namespace counterquill {

std::string_view to_string(SpanViolation::Reason r) {
    switch (r) {
        case SpanViolation::Reason::empty_or_inverted: return "empty_or_inverted";
        case SpanViolation::Reason::out_of_bounds: return "out_of_bounds";
        case SpanViolation::Reason::overlap: return "overlap";
    }
    return "unknown";
}

namespace {

auto span_key(const TextSpan& s) { return std::tuple(s.kind, s.start, s.end); }

bool violation_less(const SpanViolation& a, const SpanViolation& b) {
    return std::tuple(a.reason, span_key(a.span), span_key(a.other)) <
           std::tuple(b.reason, span_key(b.span), span_key(b.other));
}

}  // namespace

std::vector<SpanViolation> validate_spans(std::string_view text,
                                          const std::vector<TextSpan>& spans) {
    const std::size_t n = utf8::length(text);
    std::vector<SpanViolation> out;

    for (const auto& s : spans) {
        if (s.start >= s.end) {
            out.push_back({SpanViolation::Reason::empty_or_inverted, s, {}});
        } else if (s.end > n) {
            out.push_back({SpanViolation::Reason::out_of_bounds, s, {}});
        }
    }

    // Sweep each kind in start order; a span overlaps every earlier span whose
    // end lies past its start.
    std::vector<TextSpan> sorted;
    for (const auto& s : spans) {
        if (s.start < s.end) sorted.push_back(s);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const TextSpan& a, const TextSpan& b) { return span_key(a) < span_key(b); });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            if (sorted[j].kind != sorted[i].kind || sorted[j].start >= sorted[i].end) break;
            out.push_back({SpanViolation::Reason::overlap, sorted[j], sorted[i]});
        }
    }

    std::sort(out.begin(), out.end(), violation_less);
    return out;
}

std::string span_text(std::string_view text, const TextSpan& span) {
    if (span.start >= span.end) {
        fail(ErrorCode::out_of_range, "span is empty or inverted");
    }
    return utf8::slice(text, span.start, span.end);
}

}  // namespace counterquill
