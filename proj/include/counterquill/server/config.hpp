#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "counterquill/service.hpp"

namespace counterquill::server {

enum class ProviderMode { live, mock };

std::string_view to_string(ProviderMode m);
ProviderMode parse_provider_mode(std::string_view s);

struct ServerConfig {
    std::string bind = "127.0.0.1";
    int port = 8080;
    ProviderMode provider = ProviderMode::mock;
    std::string provider_base_url = "https://api.openai.com/v1";
    std::string model = "gpt-3.5-turbo";
    std::string api_key_env = "COUNTERQUILL_API_KEY";
    // Empty name or empty variable disables authentication.
    std::string auth_token_env = "COUNTERQUILL_AUTH_TOKEN";
    std::filesystem::path data_dir = "counterquill-data";
    std::filesystem::path corpus_path;  // empty: bundled corpus
    int attempt_cap = 3;
    int max_attempts = 3;
    int initial_backoff_ms = 500;
    int deadline_ms = 30000;
    std::uint64_t mock_seed = 0;
    std::uint64_t assignment_seed = 0;
};

// Unknown keys are rejected so typos do not silently fall back to defaults.
// Throws Error(config).
ServerConfig parse_config(const Json& document);
ServerConfig load_config(const std::filesystem::path& path);
Json to_json_value(const ServerConfig& config);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

// Everything `serve` needs, checked before the socket is opened.
struct Runtime {
    ServerConfig config;
    std::shared_ptr<llm::Provider> provider;
    std::unique_ptr<Service> service;
    std::string auth_token;
};

// Throws Error(config) when live mode lacks its key, the data directory is
// not writable, or the corpus cannot be read; CorruptLogError when replay
// fails.
Runtime build_runtime(const ServerConfig& config, const EnvLookup& env = process_env(),
                      Clock clock = system_clock());

}  // namespace counterquill::server
