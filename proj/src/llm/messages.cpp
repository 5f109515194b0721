#include "counterquill/llm/messages.hpp"

#include "counterquill/error.hpp"

namespace counterquill::llm {

std::string_view to_string(Role r) {
    switch (r) {
        case Role::system: return "system";
        case Role::assistant: return "assistant";
        case Role::user: return "user";
    }
    return "user";
}

std::string_view to_string(Purpose p) {
    switch (p) {
        case Purpose::equivalence: return "equivalence";
        case Purpose::suggestion: return "suggestion";
        case Purpose::rewrite: return "rewrite";
    }
    return "suggestion";
}

Role parse_role(std::string_view s) {
    if (s == "system") return Role::system;
    if (s == "assistant") return Role::assistant;
    if (s == "user") return Role::user;
    fail(ErrorCode::invalid_argument, "unknown role '" + std::string(s) + "'");
}

Purpose parse_purpose(std::string_view s) {
    if (s == "equivalence") return Purpose::equivalence;
    if (s == "suggestion") return Purpose::suggestion;
    if (s == "rewrite") return Purpose::rewrite;
    fail(ErrorCode::invalid_argument, "unknown purpose '" + std::string(s) + "'");
}

void check_request(const CompletionRequest& request) {
    if (request.messages.empty()) {
        fail(ErrorCode::invalid_argument, "completion request has no messages");
    }
    for (const auto& m : request.messages) {
        if (m.content.empty()) fail(ErrorCode::invalid_argument, "chat message content is empty");
    }
    if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
        fail(ErrorCode::invalid_argument, "temperature must lie in [0, 2]");
    }
    if (request.max_output_tokens <= 0) {
        fail(ErrorCode::invalid_argument, "max_output_tokens must be positive");
    }
}

void to_json(nlohmann::json& j, const ChatMessage& m) {
    j = nlohmann::json{{"role", to_string(m.role)}, {"content", m.content}};
}

void to_json(nlohmann::json& j, const CompletionRequest& r) {
    j = nlohmann::json{{"messages", r.messages},
                       {"temperature", r.temperature},
                       {"max_output_tokens", r.max_output_tokens},
                       {"purpose", to_string(r.purpose)}};
    if (r.seed) j["seed"] = *r.seed;
}

std::string serialize(const CompletionRequest& request) {
    return nlohmann::json(request).dump();
}

}  // namespace counterquill::llm
