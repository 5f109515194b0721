#include <array>
#include <cctype>

#include "counterquill/error.hpp"
#include "counterquill/llm/lexical.hpp"
#include "counterquill/llm/prompts.hpp"
#include "counterquill/llm/provider.hpp"

namespace counterquill::llm {

namespace {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Text between the last `open` and the following `close`.
std::string between_last(std::string_view text, std::string_view open, std::string_view close) {
    auto from = text.rfind(open);
    if (from == std::string_view::npos) return {};
    from += open.size();
    auto to = text.find(close, from);
    if (to == std::string_view::npos) return {};
    return std::string(text.substr(from, to - from));
}

std::string between(std::string_view text, std::string_view open, std::string_view close) {
    auto from = text.find(open);
    if (from == std::string_view::npos) return {};
    from += open.size();
    auto to = text.find(close, from);
    if (to == std::string_view::npos) return {};
    return std::string(text.substr(from, to - from));
}

struct EquivalenceQuestion {
    std::string gold_identity;
    std::string gold_action;
    std::string selection_identity;
    std::string selection_action;
    EquivalenceTarget target = EquivalenceTarget::both;
};

// Reads the rendered equivalence prompt back the way a model would.
EquivalenceQuestion read_equivalence(const CompletionRequest& request) {
    EquivalenceQuestion q;
    for (const auto& m : request.messages) {
        if (m.role != Role::assistant) continue;
        auto content = Json::parse(m.content, nullptr, false);
        if (content.is_discarded() || !content.is_object()) continue;
        std::string context = content.value("context", "");
        std::string query = content.value("query", "");

        auto is_pos = context.rfind("' is: '");
        auto and_pos = context.rfind("' and '");
        if (is_pos != std::string::npos && and_pos != std::string::npos && and_pos > is_pos &&
            context.size() >= 1) {
            q.gold_identity = context.substr(is_pos + 7, and_pos - is_pos - 7);
            q.gold_action = context.substr(and_pos + 7, context.size() - and_pos - 8);
        }
        const std::string lead = "If the user selects '";
        const std::string mid = "' as identity and '";
        const std::string tail = "' as dehumanizing action";
        auto a = query.find(lead);
        auto b = query.find(mid);
        auto c = query.rfind(tail);
        if (a != std::string::npos && b != std::string::npos && c != std::string::npos && b > a &&
            c > b) {
            q.selection_identity = query.substr(a + lead.size(), b - a - lead.size());
            q.selection_action = query.substr(b + mid.size(), c - b - mid.size());
        }
        if (query.find("is the identity selection") != std::string::npos) {
            q.target = EquivalenceTarget::identity;
        } else if (query.find("is the dehumanizing action selection") != std::string::npos) {
            q.target = EquivalenceTarget::action;
        }
    }
    return q;
}

std::string equivalence_reply(const CompletionRequest& request) {
    auto q = read_equivalence(request);
    bool identity_ok = lexically_equivalent(q.selection_identity, q.gold_identity);
    bool action_ok = lexically_equivalent(q.selection_action, q.gold_action);
    bool verdict = q.target == EquivalenceTarget::identity ? identity_ok
                   : q.target == EquivalenceTarget::action ? action_ok
                                                           : identity_ok && action_ok;
    return verdict ? "Yes." : "No.";
}

constexpr std::array<std::string_view, 4> observations = {
    "Your answer names a harmful assumption clearly, which is the first step to challenging it.",
    "You point to the real people behind the statement, which keeps the discussion grounded.",
    "Consider how the statement turns a whole group into a single stereotype.",
    "Think about who reads this comment and how it might shape what they believe.",
};

constexpr std::array<std::string_view, 4> advice = {
    "In your counterspeech, describe the harm calmly and invite the speaker to imagine being on "
    "the receiving end.",
    "In your counterspeech, share a concrete counterexample and keep the tone respectful.",
    "In your counterspeech, acknowledge the speaker's feelings before explaining why the "
    "generalisation is unfair.",
    "In your counterspeech, focus on the shared humanity of the people targeted rather than on "
    "attacking the speaker.",
};

std::string suggestion_reply(const CompletionRequest& request, std::uint64_t seed) {
    std::string text;
    for (const auto& m : request.messages) text += m.content;
    if (text.find("Highlighting feedback request.") != std::string::npos) {
        auto missed = between(text, "Incorrect selections: ", "\n");
        return "Take another look at your " + missed +
               " highlight. Ask yourself which words name who is being targeted and which words "
               "describe how they are being dehumanized.";
    }
    auto h = fnv1a(text, seed);
    return "Thank you for sharing your perspective on this statement. " +
           std::string(observations[h % observations.size()]) + " " +
           std::string(advice[(h >> 8) % advice.size()]);
}

std::string grammar_fix(std::string_view in) {
    std::string out;
    bool pending_space = false;
    for (char c : in) {
        if (c == ' ' || c == '\t' || c == '\n') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    // Standalone lowercase "i".
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool left = i == 0 || out[i - 1] == ' ';
        bool right = i + 1 == out.size() || out[i + 1] == ' ' || out[i + 1] == '\'' ||
                     out[i + 1] == ',' || out[i + 1] == '.';
        if (out[i] == 'i' && left && right) out[i] = 'I';
    }
    if (!out.empty() && std::islower(static_cast<unsigned char>(out[0]))) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    if (!out.empty() && out.back() != '.' && out.back() != '!' && out.back() != '?') {
        out.push_back('.');
    }
    return out;
}

std::string rewrite_reply(const CompletionRequest& request) {
    std::string body;
    for (const auto& m : request.messages) {
        if (m.role == Role::user) body = m.content;
    }
    std::string selection = between_last(body, selection_open, selection_close);
    std::string mode = between(body, "Mode: ", "\n");
    std::string out;
    if (mode == "grammar") {
        out = grammar_fix(selection);
    } else if (mode == "empathetic") {
        out = "I understand this may come from a real worry, and I want to gently share "
              "another view: " +
              selection;
    } else if (mode.rfind("use_note", 0) == 0) {
        out = selection + " " + between(body, "<note>\n", "\n</note>");
    } else if (mode == "custom") {
        out = selection + " (revised to: " + between(body, "<instruction>\n", "\n</instruction>") +
              ")";
    } else {
        out = selection;
    }
    if (request.seed && *request.seed > 1) out += " (take " + std::to_string(*request.seed) + ")";
    return out;
}

}  // namespace

void MockProvider::push_fault(Fault fault) {
    std::lock_guard lock(mutex_);
    faults_.push_back(std::move(fault));
}

std::size_t MockProvider::calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

std::string MockProvider::reply_for(const CompletionRequest& request) const {
    switch (request.purpose) {
        case Purpose::equivalence: return equivalence_reply(request);
        case Purpose::suggestion: return suggestion_reply(request, seed_);
        case Purpose::rewrite: return rewrite_reply(request);
    }
    return {};
}

std::string MockProvider::send(const CompletionRequest& request,
                               std::chrono::milliseconds budget) {
    std::optional<Fault> fault;
    {
        std::lock_guard lock(mutex_);
        ++calls_;
        if (!faults_.empty()) {
            fault = faults_.front();
            faults_.pop_front();
        }
    }
    if (budget.count() <= 0) fail(ErrorCode::timeout, "mock provider: no time budget");
    if (fault) {
        switch (fault->kind) {
            case Fault::Kind::status: throw ProviderError(fault->status, "scripted failure");
            case Fault::Kind::empty_body: throw ProviderError(200, "");
            case Fault::Kind::reply: return fault->reply;
            case Fault::Kind::timeout: fail(ErrorCode::timeout, "mock provider: scripted timeout");
        }
    }
    return reply_for(request);
}

}  // namespace counterquill::llm
