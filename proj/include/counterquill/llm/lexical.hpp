#pragma once

#include <set>
#include <string>
#include <string_view>

namespace counterquill::llm {

// Lowercase, drop punctuation, split on whitespace.
std::set<std::string> normalized_tokens(std::string_view text);

// |A ∩ B| / |A ∪ B|; two empty sets give 0.
double token_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// The lexical equivalence rule shared by the mock provider and the grading
// fallback: the selection's tokens are a subset of the gold tokens, or their
// Jaccard overlap reaches 0.5. A selection with no tokens never matches.
bool lexically_equivalent(std::string_view selection, std::string_view gold);

inline constexpr double jaccard_threshold = 0.5;

}  // namespace counterquill::llm
