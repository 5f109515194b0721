#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Codepoint-level helpers. All offsets exchanged with clients are codepoint
// indices, never byte offsets.
namespace counterquill::utf8 {

// Throws Error(invalid_argument) on malformed input.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view codepoints);

std::size_t length(std::string_view text);

// Byte offset of codepoint `index`; index == length(text) yields text.size().
std::size_t byte_offset(std::string_view text, std::size_t index);

// Codepoint slice [start, end). Throws Error(out_of_range) when out of bounds.
std::string slice(std::string_view text, std::size_t start, std::size_t end);

}  // namespace counterquill::utf8
