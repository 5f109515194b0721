#pragma once

#include <string_view>

// Documents compiled into the library from data/ at build time.
namespace counterquill::data {

extern const std::string_view curriculum_json;
extern const std::string_view tutorial_json;
extern const std::string_view corpus_jsonl;

}  // namespace counterquill::data
