#include "counterquill/llm/yes_no.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "counterquill/error.hpp"

namespace counterquill::llm {

namespace {

// ASCII words, lowercased; everything else separates.
std::vector<std::string> words(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (char ch : text) {
        auto c = static_cast<unsigned char>(ch);
        if (std::isalpha(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

}  // namespace

bool parse_yes_no(std::string_view completion) {
    auto tokens = words(completion);
    // The first word already is the leading token once punctuation and
    // whitespace are stripped, so the fallback scan subsumes it.
    for (const auto& w : tokens) {
        if (w == "yes") return true;
        if (w == "no") return false;
    }
    fail(ErrorCode::unparseable,
         "reply contains neither Yes nor No: '" + std::string(completion.substr(0, 80)) + "'");
}

}  // namespace counterquill::llm
