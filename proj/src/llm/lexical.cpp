#include "counterquill/llm/lexical.hpp"

#include <algorithm>

#include "counterquill/utf8.hpp"

namespace counterquill::llm {

namespace {

bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
           c == 0x00A0 || c == 0x3000 || (c >= 0x2000 && c <= 0x200A);
}

bool is_punct(char32_t c) {
    if (c < 0x80) {
        return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
               (c >= 0x7B && c <= 0x7E);
    }
    // Latin-1 punctuation, General Punctuation block (curly quotes, dashes).
    return (c >= 0xA1 && c <= 0xBF && c != 0xAA && c != 0xBA) || (c >= 0x2010 && c <= 0x205E);
}

char32_t fold(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 32;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
    return c;
}

}  // namespace

std::set<std::string> normalized_tokens(std::string_view text) {
    std::set<std::string> tokens;
    std::u32string current;
    auto flush = [&] {
        if (!current.empty()) tokens.insert(utf8::encode(current));
        current.clear();
    };
    for (char32_t c : utf8::decode(text)) {
        if (is_space(c)) {
            flush();
        } else if (!is_punct(c)) {
            current.push_back(fold(c));
        }
    }
    flush();
    return tokens;
}

double token_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t common = 0;
    for (const auto& t : a) common += b.count(t);
    std::size_t uni = a.size() + b.size() - common;
    return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

bool lexically_equivalent(std::string_view selection, std::string_view gold) {
    auto sel = normalized_tokens(selection);
    if (sel.empty()) return false;
    auto ref = normalized_tokens(gold);
    if (std::includes(ref.begin(), ref.end(), sel.begin(), sel.end())) return true;
    return token_jaccard(sel, ref) >= jaccard_threshold;
}

}  // namespace counterquill::llm
