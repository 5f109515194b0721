#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "counterquill/domain.hpp"

namespace counterquill {

struct SpanViolation {
    enum class Reason { empty_or_inverted, out_of_bounds, overlap };

    Reason reason;
    TextSpan span;
    // The same-kind span it collides with; only meaningful for overlap.
    TextSpan other;

    friend bool operator==(const SpanViolation&, const SpanViolation&) = default;
};

std::string_view to_string(SpanViolation::Reason r);

// Reports every span that is empty/inverted, reaches past the text, or
// intersects another span of the same kind. An empty result means valid.
// The result is sorted, so permuting the input never changes it.
std::vector<SpanViolation> validate_spans(std::string_view text,
                                          const std::vector<TextSpan>& spans);

std::string span_text(std::string_view text, const TextSpan& span);

}  // namespace counterquill
