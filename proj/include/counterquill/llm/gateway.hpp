#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>

#include "counterquill/llm/messages.hpp"
#include "counterquill/llm/provider.hpp"

namespace counterquill::llm {

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::milliseconds deadline{30000};
};

// Time source and sleeper, replaceable so tests run without waiting.
struct Timer {
    std::function<std::chrono::steady_clock::time_point()> now =
        [] { return std::chrono::steady_clock::now(); };
    std::function<void(std::chrono::milliseconds)> sleep;

    static Timer real();
};

// Transport failures (status 0), 408, 429 and 5xx are retried.
bool is_transient(int status);

// Sends `request`, retrying transient failures with exponential backoff until
// the attempt limit or the total deadline. Surfaces Error(timeout),
// ProviderError and Error(exhausted_retries) distinctly.
std::string complete(const CompletionRequest& request, Provider& provider,
                     const RetryPolicy& policy = {}, const Timer& timer = Timer::real());

// Stateless apart from its provider and policy; safe for concurrent calls.
class Gateway {
public:
    Gateway(std::shared_ptr<Provider> provider, RetryPolicy policy = {},
            Timer timer = Timer::real())
        : provider_(std::move(provider)), policy_(policy), timer_(std::move(timer)) {}

    std::string complete(const CompletionRequest& request) const {
        return llm::complete(request, *provider_, policy_, timer_);
    }

    Provider& provider() const { return *provider_; }
    const RetryPolicy& policy() const { return policy_; }

private:
    std::shared_ptr<Provider> provider_;
    RetryPolicy policy_;
    Timer timer_;
};

}  // namespace counterquill::llm
