#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace counterquill::llm {

enum class Role { system, assistant, user };
enum class Purpose { equivalence, suggestion, rewrite };

std::string_view to_string(Role r);
std::string_view to_string(Purpose p);
Role parse_role(std::string_view s);
Purpose parse_purpose(std::string_view s);

struct ChatMessage {
    Role role = Role::user;
    std::string content;

    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct CompletionRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_output_tokens = 512;
    Purpose purpose = Purpose::suggestion;
    // Forwarded to providers that support sampling seeds; rewrites use the
    // attempt number so a retry asks for a different candidate.
    std::optional<std::int64_t> seed;

    friend bool operator==(const CompletionRequest&, const CompletionRequest&) = default;
};

// Throws Error(invalid_argument) when a request breaks its invariants.
void check_request(const CompletionRequest& request);

// Canonical serialization; equal requests produce byte-identical output.
std::string serialize(const CompletionRequest& request);

void to_json(nlohmann::json& j, const ChatMessage& m);
void to_json(nlohmann::json& j, const CompletionRequest& r);

}  // namespace counterquill::llm
