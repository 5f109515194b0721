#include "counterquill/utf8.hpp"

#include "counterquill/error.hpp"

namespace counterquill::utf8 {

namespace {

// Returns the sequence length for a lead byte, 0 when the byte cannot lead.
std::size_t sequence_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead & 0xE0) == 0xC0) return lead >= 0xC2 ? 2 : 0;
    if ((lead & 0xF0) == 0xE0) return 3;
    if ((lead & 0xF8) == 0xF0) return lead <= 0xF4 ? 4 : 0;
    return 0;
}

char32_t read_one(std::string_view text, std::size_t& pos) {
    auto lead = static_cast<unsigned char>(text[pos]);
    std::size_t n = sequence_length(lead);
    if (n == 0 || pos + n > text.size()) {
        fail(ErrorCode::invalid_argument,
             "malformed UTF-8 at byte " + std::to_string(pos));
    }
    char32_t cp = n == 1 ? lead : lead & (0xFF >> (n + 1));
    for (std::size_t i = 1; i < n; ++i) {
        auto c = static_cast<unsigned char>(text[pos + i]);
        if ((c & 0xC0) != 0x80) {
            fail(ErrorCode::invalid_argument,
                 "malformed UTF-8 at byte " + std::to_string(pos + i));
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr char32_t min_for_length[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_length[n] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        fail(ErrorCode::invalid_argument,
             "invalid code point at byte " + std::to_string(pos));
    }
    pos += n;
    return cp;
}

}  // namespace

std::u32string decode(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) out.push_back(read_one(text, pos));
    return out;
}

std::string encode(std::u32string_view codepoints) {
    std::string out;
    out.reserve(codepoints.size());
    for (char32_t cp : codepoints) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::size_t length(std::string_view text) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        read_one(text, pos);
        ++count;
    }
    return count;
}

std::size_t byte_offset(std::string_view text, std::size_t index) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < index; ++i) {
        if (pos >= text.size()) {
            fail(ErrorCode::out_of_range,
                 "codepoint index " + std::to_string(index) + " beyond text length");
        }
        read_one(text, pos);
    }
    return pos;
}

std::string slice(std::string_view text, std::size_t start, std::size_t end) {
    if (start > end) {
        fail(ErrorCode::out_of_range, "slice start after end");
    }
    std::size_t from = byte_offset(text, start);
    std::size_t to = from + byte_offset(text.substr(from), end - start);
    return std::string(text.substr(from, to - from));
}

}  // namespace counterquill::utf8
