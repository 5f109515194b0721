#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>

#include "counterquill/llm/messages.hpp"

namespace counterquill::llm {

// A chat-completion backend. `send` returns the first candidate's text or
// throws: ProviderError for failure statuses and unusable bodies (status 0
// means the transport failed), Error(timeout) when `budget` elapses.
class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string send(const CompletionRequest& request,
                             std::chrono::milliseconds budget) = 0;
    virtual std::string name() const = 0;
};

// Deterministic offline provider. Replies are a pure function of the request
// and the seed:
//   equivalence: "Yes." iff every graded selection passes lexically_equivalent
//                against the gold string in the prompt, else "No.".
//   suggestion:  acknowledge / evaluate / advise text picked by a hash.
//   rewrite:     a marked transform of the <selection> block; attempts after
//                the first carry a "(take N)" suffix.
// Scripted faults are consumed one per call before normal replies resume.
class MockProvider : public Provider {
public:
    struct Fault {
        enum class Kind { status, empty_body, reply, timeout };
        Kind kind = Kind::status;
        int status = 503;
        std::string reply;  // used by Kind::reply
    };

    explicit MockProvider(std::uint64_t seed = 0) : seed_(seed) {}

    void push_fault(Fault fault);
    std::size_t calls() const;

    std::string send(const CompletionRequest& request, std::chrono::milliseconds budget) override;
    std::string name() const override { return "mock"; }

    // Reply without consulting the fault script.
    std::string reply_for(const CompletionRequest& request) const;

private:
    std::uint64_t seed_;
    mutable std::mutex mutex_;
    std::deque<Fault> faults_;
    std::size_t calls_ = 0;
};

struct HttpProviderConfig {
    // e.g. https://api.openai.com/v1 ; "/chat/completions" is appended.
    std::string base_url;
    std::string api_key;
    std::string model = "gpt-3.5-turbo";
};

// OpenAI-compatible chat-completions client.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);

    std::string send(const CompletionRequest& request, std::chrono::milliseconds budget) override;
    std::string name() const override { return "live"; }

    // Body posted for `request`; exposed for tests.
    std::string request_body(const CompletionRequest& request) const;

private:
    HttpProviderConfig config_;
    std::string scheme_host_port_;
    std::string path_;
};

}  // namespace counterquill::llm
