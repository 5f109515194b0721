#include "counterquill/server/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "counterquill/error.hpp"

namespace counterquill::server {

namespace {

template <typename T>
void read(const Json& doc, const char* key, T& out) {
    if (!doc.contains(key)) return;
    try {
        out = doc.at(key).get<T>();
    } catch (const Json::exception&) {
        fail(ErrorCode::config, std::string("config key '") + key + "' has the wrong type");
    }
}

void check_positive(int v, const char* key) {
    if (v < 1) fail(ErrorCode::config, std::string("config key '") + key + "' must be positive");
}

}  // namespace

std::string_view to_string(ProviderMode m) { return m == ProviderMode::live ? "live" : "mock"; }

ProviderMode parse_provider_mode(std::string_view s) {
    if (s == "live") return ProviderMode::live;
    if (s == "mock") return ProviderMode::mock;
    fail(ErrorCode::config, "provider must be 'live' or 'mock', not '" + std::string(s) + "'");
}

ServerConfig parse_config(const Json& doc) {
    if (!doc.is_object()) fail(ErrorCode::config, "config must be a JSON object");
    static const std::set<std::string> known = {
        "bind",        "port",         "provider",           "provider_base_url",
        "model",       "api_key_env",  "auth_token_env",     "data_dir",
        "corpus_path", "attempt_cap",  "max_attempts",       "initial_backoff_ms",
        "deadline_ms", "mock_seed",    "assignment_seed"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) fail(ErrorCode::config, "unknown config key '" + key + "'");
    }
    ServerConfig c;
    read(doc, "bind", c.bind);
    read(doc, "port", c.port);
    std::string provider(to_string(c.provider));
    read(doc, "provider", provider);
    c.provider = parse_provider_mode(provider);
    read(doc, "provider_base_url", c.provider_base_url);
    read(doc, "model", c.model);
    read(doc, "api_key_env", c.api_key_env);
    read(doc, "auth_token_env", c.auth_token_env);
    std::string path = c.data_dir.string();
    read(doc, "data_dir", path);
    c.data_dir = path;
    path = c.corpus_path.string();
    read(doc, "corpus_path", path);
    c.corpus_path = path;
    read(doc, "attempt_cap", c.attempt_cap);
    read(doc, "max_attempts", c.max_attempts);
    read(doc, "initial_backoff_ms", c.initial_backoff_ms);
    read(doc, "deadline_ms", c.deadline_ms);
    read(doc, "mock_seed", c.mock_seed);
    read(doc, "assignment_seed", c.assignment_seed);

    if (c.port < 0 || c.port > 65535) fail(ErrorCode::config, "port must lie in 0..65535");
    check_positive(c.attempt_cap, "attempt_cap");
    check_positive(c.max_attempts, "max_attempts");
    check_positive(c.initial_backoff_ms, "initial_backoff_ms");
    check_positive(c.deadline_ms, "deadline_ms");
    if (c.data_dir.empty()) fail(ErrorCode::config, "data_dir must not be empty");
    return c;
}

ServerConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::config, "cannot read config " + path.string());
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded()) fail(ErrorCode::config, "config " + path.string() + " is not valid JSON");
    return parse_config(doc);
}

Json to_json_value(const ServerConfig& c) {
    return {{"bind", c.bind},
            {"port", c.port},
            {"provider", to_string(c.provider)},
            {"provider_base_url", c.provider_base_url},
            {"model", c.model},
            {"api_key_env", c.api_key_env},
            {"auth_token_env", c.auth_token_env},
            {"data_dir", c.data_dir.string()},
            {"corpus_path", c.corpus_path.string()},
            {"attempt_cap", c.attempt_cap},
            {"max_attempts", c.max_attempts},
            {"initial_backoff_ms", c.initial_backoff_ms},
            {"deadline_ms", c.deadline_ms},
            {"mock_seed", c.mock_seed},
            {"assignment_seed", c.assignment_seed}};
}

EnvLookup process_env() {
    return [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    };
}

Runtime build_runtime(const ServerConfig& config, const EnvLookup& env, Clock clock) {
    Runtime rt;
    rt.config = config;

    if (config.provider == ProviderMode::live) {
        auto key = config.api_key_env.empty() ? std::nullopt : env(config.api_key_env);
        if (!key || key->empty()) {
            fail(ErrorCode::config, "live provider mode needs an API key in $" +
                                        (config.api_key_env.empty() ? std::string("<unset>")
                                                                    : config.api_key_env));
        }
        rt.provider = std::make_shared<llm::HttpProvider>(
            llm::HttpProviderConfig{config.provider_base_url, *key, config.model});
    } else {
        rt.provider = std::make_shared<llm::MockProvider>(config.mock_seed);
    }
    if (!config.auth_token_env.empty()) rt.auth_token = env(config.auth_token_env).value_or("");

    std::error_code ec;
    std::filesystem::create_directories(config.data_dir, ec);
    const auto probe = config.data_dir / ".write-probe";
    {
        std::ofstream out(probe);
        if (ec || !out || !(out << "ok")) {
            fail(ErrorCode::config, "data directory " + config.data_dir.string() + " is not writable");
        }
    }
    std::filesystem::remove(probe, ec);

    Corpus corpus;
    try {
        corpus = config.corpus_path.empty() ? Corpus::bundled() : Corpus::load(config.corpus_path);
    } catch (const Error& e) {
        fail(ErrorCode::config, "cannot load corpus: " + std::string(e.what()));
    }
    if (corpus.empty()) fail(ErrorCode::config, "the corpus is empty");

    llm::RetryPolicy policy{config.max_attempts, std::chrono::milliseconds(config.initial_backoff_ms),
                            std::chrono::milliseconds(config.deadline_ms)};
    auto gateway = std::make_shared<llm::Gateway>(rt.provider, policy);
    auto log = std::make_unique<EventLog>(config.data_dir / "events.jsonl");
    rt.service = std::make_unique<Service>(
        std::move(corpus), gateway, std::move(log),
        ServiceOptions{config.attempt_cap, config.assignment_seed}, std::move(clock));
    return rt;
}

}  // namespace counterquill::server
