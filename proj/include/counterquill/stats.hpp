#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace counterquill::stats {

enum class TestFamily { paired, welch };

std::string_view to_string(TestFamily f);
TestFamily parse_family(std::string_view s);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

// Sample standard deviation (n − 1 denominator). Requires at least two values.
MeanSd mean_sd(std::span<const double> values);

// One questionnaire item compared under one test family. For the paired
// family `a`/`b` are the two conditions; for Welch they are the two groups.
struct TestReport {
    std::string item_name;
    TestFamily family = TestFamily::paired;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    MeanSd a;
    MeanSd b;
    double mean_difference = 0.0;
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Zero-variance differences are not errors: a zero mean difference reports
// t = 0, p = 1; any other difference reports t = ±infinity and p = 0, with a
// zero-width confidence interval at the point estimate.
TestReport paired_t(std::span<const double> a, std::span<const double> b,
                    std::string item_name = {});
TestReport welch_t(std::span<const double> a, std::span<const double> b,
                   std::string item_name = {});

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double x, double a, double b);

// Student-t CDF with `df` > 0 degrees of freedom.
double student_t_cdf(double x, double df);
// Two-sided p-value for statistic t.
double student_t_two_sided_p(double t, double df);
// Inverse CDF by bisection.
double student_t_quantile(double probability, double df);

// 100 · (to − from) / from. Throws Error(invalid_argument) when from == 0.
double percent_change(double mean_from, double mean_to);

// "***" p < .001, "**" p < .01, "*" p < .05, otherwise empty.
std::string significance_stars(double p);

enum class TableFormat { text, csv };

TableFormat parse_table_format(std::string_view s);

struct TableLabels {
    std::string a = "A";
    std::string b = "B";
};

// Columns: item, mean±SD for each side, t, df, p with stars, 95% CI.
std::string render_table(const std::vector<TestReport>& reports, TableFormat format = TableFormat::text,
                         const TableLabels& labels = {});

}  // namespace counterquill::stats
