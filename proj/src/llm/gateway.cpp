#include "counterquill/llm/gateway.hpp"

#include <thread>

#include "counterquill/error.hpp"

namespace counterquill::llm {

using std::chrono::duration_cast;
using std::chrono::milliseconds;

Timer Timer::real() {
    Timer t;
    t.sleep = [](milliseconds d) { std::this_thread::sleep_for(d); };
    return t;
}

bool is_transient(int status) { return status == 0 || status == 408 || status == 429 || status >= 500; }

std::string complete(const CompletionRequest& request, Provider& provider,
                     const RetryPolicy& policy, const Timer& timer) {
    check_request(request);
    if (policy.deadline.count() <= 0) fail(ErrorCode::timeout, "completion deadline is zero");

    const auto start = timer.now();
    auto remaining = [&] {
        return policy.deadline - duration_cast<milliseconds>(timer.now() - start);
    };

    std::string last_failure;
    const int attempts = std::max(1, policy.max_attempts);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        auto budget = remaining();
        if (budget.count() <= 0) fail(ErrorCode::timeout, "completion deadline exceeded");
        try {
            std::string text = provider.send(request, budget);
            if (remaining().count() < 0) fail(ErrorCode::timeout, "completion deadline exceeded");
            if (text.empty()) throw ProviderError(200, "");
            return text;
        } catch (const ProviderError& e) {
            if (!is_transient(e.status())) throw;
            last_failure = std::string(e.what()) + (e.body().empty() ? "" : ": " + e.body());
        } catch (const Error& e) {
            if (e.code() != ErrorCode::timeout) throw;
            last_failure = e.what();
        }
        if (attempt == attempts) break;

        auto backoff = policy.initial_backoff * (1LL << (attempt - 1));
        if (backoff >= remaining()) fail(ErrorCode::timeout, "completion deadline exceeded");
        if (timer.sleep) timer.sleep(backoff);
    }
    fail(ErrorCode::exhausted_retries, "gave up after " + std::to_string(attempts) +
                                           " attempts; last failure: " + last_failure);
}

}  // namespace counterquill::llm
