#pragma once

#include <string>
#include <vector>

#include "counterquill/stats.hpp"
#include "counterquill/study.hpp"

namespace counterquill::report {

struct Section {
    std::string title;
    stats::TableLabels labels;
    std::vector<stats::TestReport> reports;
};

// Paired: one section per instrument, baseline (a) against counterquill (b),
// over participants with both values. Welch: one section per platform and
// instrument, participants who used that platform first (a) against those who
// used it second (b). Items with fewer than two values on a side are skipped.
std::vector<Section> build(const std::vector<study::DatasetRow>& rows, stats::TestFamily family);

// Text: titled tables separated by blank lines. CSV: one table with a
// leading "section" column.
std::string render(const std::vector<Section>& sections, stats::TableFormat format);

}  // namespace counterquill::report
