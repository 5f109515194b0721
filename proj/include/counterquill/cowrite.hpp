#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "counterquill/domain.hpp"
#include "counterquill/llm/prompts.hpp"

namespace counterquill::cowrite {

enum class ExchangeStatus { pending, inserted, retried, discarded };

std::string_view to_string(ExchangeStatus s);
ExchangeStatus parse_exchange_status(std::string_view s);

// One rewrite round trip bound to the draft revision it was requested on.
struct RewriteExchange {
    std::string id;
    std::string session_id;
    std::size_t start = 0;
    std::size_t end = 0;
    std::uint64_t revision = 0;
    llm::RewriteMode mode;
    std::string selected_text;
    std::string candidate_text;
    ExchangeStatus status = ExchangeStatus::pending;
    int attempt = 1;
    std::string error;  // provider failure that discarded the exchange
    Timestamp created_at = 0;

    friend bool operator==(const RewriteExchange&, const RewriteExchange&) = default;
};

// Initial draft for the counterquill condition.
std::string seed_draft(std::string_view answer_1, std::string_view answer_2);

// Replaces codepoints [start, end) of `content` with `replacement`; everything
// outside the range is copied byte for byte. Throws Error(invalid_argument)
// for an inverted or out-of-bounds range.
std::string splice(std::string_view content, std::size_t start, std::size_t end,
                   std::string_view replacement);

// Throws Error(invalid_argument) unless 0 <= start < end <= length(content).
void check_selection(std::string_view content, std::size_t start, std::size_t end);

Json to_json_value(const RewriteExchange& e);
RewriteExchange exchange_from_json(const Json& j);

}  // namespace counterquill::cowrite
