#include <httplib.h>

#include "counterquill/domain.hpp"
#include "counterquill/error.hpp"
#include "counterquill/llm/provider.hpp"

namespace counterquill::llm {

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    const auto& url = config_.base_url;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        fail(ErrorCode::config, "provider base URL needs a scheme: '" + url + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    scheme_host_port_ = url.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    path_ = prefix + "/chat/completions";
}

std::string HttpProvider::request_body(const CompletionRequest& request) const {
    Json body = {{"model", config_.model},
                 {"messages", request.messages},
                 {"temperature", request.temperature},
                 {"max_tokens", request.max_output_tokens},
                 {"n", 1}};
    if (request.seed) body["seed"] = *request.seed;
    return body.dump();
}

std::string HttpProvider::send(const CompletionRequest& request,
                               std::chrono::milliseconds budget) {
    if (budget.count() <= 0) fail(ErrorCode::timeout, "no time left for provider call");

    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(budget);
    client.set_read_timeout(budget);
    client.set_write_timeout(budget);

    httplib::Headers headers;
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }
    auto result = client.Post(path_, headers, request_body(request), "application/json");
    if (!result) {
        auto err = result.error();
        if (err == httplib::Error::Read || err == httplib::Error::Write ||
            err == httplib::Error::ConnectionTimeout) {
            fail(ErrorCode::timeout, "provider call timed out: " + httplib::to_string(err));
        }
        throw ProviderError(0, httplib::to_string(err));
    }
    const auto& res = *result;
    if (res.status < 200 || res.status >= 300) throw ProviderError(res.status, res.body);
    if (res.body.empty()) throw ProviderError(res.status, "");

    auto parsed = Json::parse(res.body, nullptr, false);
    if (parsed.is_discarded()) throw ProviderError(res.status, res.body);
    try {
        auto text = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        if (text.empty()) throw ProviderError(res.status, res.body);
        return text;
    } catch (const Json::exception&) {
        throw ProviderError(res.status, res.body);
    }
}

}  // namespace counterquill::llm
