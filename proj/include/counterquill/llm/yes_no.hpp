#pragma once

#include <string_view>

namespace counterquill::llm {

// Reads a Yes/No verdict out of a model reply. A leading "yes"/"no" token
// decides; otherwise the first standalone occurrence of either word does.
// Throws Error(unparseable) when neither word occurs.
bool parse_yes_no(std::string_view completion);

}  // namespace counterquill::llm
