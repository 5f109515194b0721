#include "counterquill/cowrite.hpp"

#include "counterquill/error.hpp"
#include "counterquill/utf8.hpp"

namespace counterquill::cowrite {

std::string_view to_string(ExchangeStatus s) {
    switch (s) {
        case ExchangeStatus::pending: return "pending";
        case ExchangeStatus::inserted: return "inserted";
        case ExchangeStatus::retried: return "retried";
        case ExchangeStatus::discarded: return "discarded";
    }
    return "pending";
}

ExchangeStatus parse_exchange_status(std::string_view s) {
    if (s == "pending") return ExchangeStatus::pending;
    if (s == "inserted") return ExchangeStatus::inserted;
    if (s == "retried") return ExchangeStatus::retried;
    if (s == "discarded") return ExchangeStatus::discarded;
    fail(ErrorCode::invalid_argument, "unknown exchange status '" + std::string(s) + "'");
}

std::string seed_draft(std::string_view answer_1, std::string_view answer_2) {
    return std::string(answer_1) + "\n\n" + std::string(answer_2);
}

void check_selection(std::string_view content, std::size_t start, std::size_t end) {
    if (start >= end) {
        fail(ErrorCode::invalid_argument, "selection [" + std::to_string(start) + "," +
                                              std::to_string(end) + ") is empty or inverted");
    }
    const auto n = utf8::length(content);
    if (end > n) {
        fail(ErrorCode::invalid_argument, "selection end " + std::to_string(end) +
                                              " lies beyond the draft length " + std::to_string(n));
    }
}

std::string splice(std::string_view content, std::size_t start, std::size_t end,
                   std::string_view replacement) {
    if (start > end) fail(ErrorCode::invalid_argument, "splice range is inverted");
    if (end > utf8::length(content)) fail(ErrorCode::invalid_argument, "splice range out of bounds");
    const auto from = utf8::byte_offset(content, start);
    const auto to = utf8::byte_offset(content, end);
    std::string out;
    out.reserve(content.size() - (to - from) + replacement.size());
    out.append(content.substr(0, from));
    out.append(replacement);
    out.append(content.substr(to));
    return out;
}

Json to_json_value(const RewriteExchange& e) {
    return {{"id", e.id},
            {"session_id", e.session_id},
            {"selection", {{"start", e.start}, {"end", e.end}}},
            {"revision", e.revision},
            {"mode", llm::to_json_value(e.mode)},
            {"selected_text", e.selected_text},
            {"candidate_text", e.candidate_text},
            {"status", to_string(e.status)},
            {"attempt", e.attempt},
            {"error", e.error},
            {"created_at", e.created_at}};
}

RewriteExchange exchange_from_json(const Json& j) {
    RewriteExchange e;
    e.id = j.at("id").get<std::string>();
    e.session_id = j.at("session_id").get<std::string>();
    e.start = j.at("selection").at("start").get<std::size_t>();
    e.end = j.at("selection").at("end").get<std::size_t>();
    e.revision = j.at("revision").get<std::uint64_t>();
    e.mode = llm::rewrite_mode_from_json(j.at("mode"));
    e.selected_text = j.at("selected_text").get<std::string>();
    e.candidate_text = j.at("candidate_text").get<std::string>();
    e.status = parse_exchange_status(j.at("status").get<std::string>());
    e.attempt = j.at("attempt").get<int>();
    e.error = j.value("error", std::string{});
    e.created_at = j.at("created_at").get<Timestamp>();
    return e;
}

}  // namespace counterquill::cowrite
