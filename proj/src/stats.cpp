#include "counterquill/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "counterquill/error.hpp"

namespace counterquill::stats {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double beta_tolerance = 1e-12;
constexpr int beta_max_iterations = 10000;

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= beta_max_iterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < beta_tolerance) break;
    }
    return h;
}

std::string fixed(double v, int digits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.000" || s == "-0.00") s.erase(0, 1);
    return s;
}

std::string format_p(double p) {
    std::string out = p < 0.001 ? "<0.001" : fixed(p, 3);
    return out + significance_stars(p);
}

std::string mean_pm_sd(const MeanSd& m) { return fixed(m.mean, 2) + "±" + fixed(m.sd, 2); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Display width in codepoints, for column padding.
std::size_t width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

void require_size(std::span<const double> v, const char* what) {
    if (v.size() < 2) {
        fail(ErrorCode::invalid_argument, std::string(what) + " needs at least two values");
    }
}

}  // namespace

std::string_view to_string(TestFamily f) { return f == TestFamily::paired ? "paired" : "welch"; }

TestFamily parse_family(std::string_view s) {
    if (s == "paired") return TestFamily::paired;
    if (s == "welch") return TestFamily::welch;
    fail(ErrorCode::invalid_argument, "unknown test family '" + std::string(s) + "'");
}

MeanSd mean_sd(std::span<const double> values) {
    require_size(values, "mean_sd");
    const double n = static_cast<double>(values.size());
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
        return {values[0], 0.0};
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

double incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) fail(ErrorCode::invalid_argument, "incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) fail(ErrorCode::invalid_argument, "degrees of freedom must be positive");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    const double p = incomplete_beta(df / (df + t * t), df / 2.0, 0.5);
    return std::clamp(p, 0.0, 1.0);
}

double student_t_cdf(double x, double df) {
    if (!(df > 0.0)) fail(ErrorCode::invalid_argument, "degrees of freedom must be positive");
    if (x == inf) return 1.0;
    if (x == -inf) return 0.0;
    if (std::isnan(x)) return x;
    if (x * x < df) {
        // Near zero df / (df + x^2) rounds to 1; the complement keeps precision.
        const double central = 0.5 * incomplete_beta(x * x / (df + x * x), 0.5, df / 2.0);
        return x >= 0.0 ? 0.5 + central : 0.5 - central;
    }
    const double tail = 0.5 * student_t_two_sided_p(x, df);
    return x >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double probability, double df) {
    if (!(probability > 0.0 && probability < 1.0)) {
        fail(ErrorCode::invalid_argument, "quantile probability must lie in (0, 1)");
    }
    double lo = -1.0;
    double hi = 1.0;
    while (student_t_cdf(lo, df) > probability) lo *= 2.0;
    while (student_t_cdf(hi, df) < probability) hi *= 2.0;
    for (int i = 0; i < 300 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < probability) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TestReport paired_t(std::span<const double> a, std::span<const double> b, std::string item_name) {
    if (a.size() != b.size()) fail(ErrorCode::invalid_argument, "paired samples differ in length");
    require_size(a, "paired_t");

    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];

    TestReport r;
    r.item_name = std::move(item_name);
    r.family = TestFamily::paired;
    r.n_a = a.size();
    r.n_b = b.size();
    r.a = mean_sd(a);
    r.b = mean_sd(b);
    const auto d = mean_sd(diff);
    const double n = static_cast<double>(diff.size());
    r.mean_difference = d.mean;
    r.df = n - 1.0;
    const double se = d.sd / std::sqrt(n);
    if (se == 0.0) {
        r.t = d.mean == 0.0 ? 0.0 : std::copysign(inf, d.mean);
        r.p = d.mean == 0.0 ? 1.0 : 0.0;
        r.ci_low = r.ci_high = d.mean;
        return r;
    }
    r.t = d.mean / se;
    r.p = student_t_two_sided_p(r.t, r.df);
    const double half = student_t_quantile(0.975, r.df) * se;
    r.ci_low = d.mean - half;
    r.ci_high = d.mean + half;
    return r;
}

TestReport welch_t(std::span<const double> a, std::span<const double> b, std::string item_name) {
    require_size(a, "welch_t");
    require_size(b, "welch_t");

    TestReport r;
    r.item_name = std::move(item_name);
    r.family = TestFamily::welch;
    r.n_a = a.size();
    r.n_b = b.size();
    r.a = mean_sd(a);
    r.b = mean_sd(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = r.a.sd * r.a.sd / na;
    const double vb = r.b.sd * r.b.sd / nb;
    const double se = std::sqrt(va + vb);
    r.mean_difference = r.a.mean - r.b.mean;
    if (se == 0.0) {
        r.df = na + nb - 2.0;
        r.t = r.mean_difference == 0.0 ? 0.0 : std::copysign(inf, r.mean_difference);
        r.p = r.mean_difference == 0.0 ? 1.0 : 0.0;
        r.ci_low = r.ci_high = r.mean_difference;
        return r;
    }
    r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    r.t = r.mean_difference / se;
    r.p = student_t_two_sided_p(r.t, r.df);
    const double half = student_t_quantile(0.975, r.df) * se;
    r.ci_low = r.mean_difference - half;
    r.ci_high = r.mean_difference + half;
    return r;
}

double percent_change(double mean_from, double mean_to) {
    if (mean_from == 0.0) fail(ErrorCode::invalid_argument, "percent change from a zero baseline");
    return 100.0 * (mean_to - mean_from) / mean_from;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

TableFormat parse_table_format(std::string_view s) {
    if (s == "text") return TableFormat::text;
    if (s == "csv") return TableFormat::csv;
    fail(ErrorCode::invalid_argument, "unknown table format '" + std::string(s) + "'");
}

std::string render_table(const std::vector<TestReport>& reports, TableFormat format,
                         const TableLabels& labels) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Item", labels.a + " Mean±SD", labels.b + " Mean±SD", "t", "df", "p",
                    "95% CI"});
    for (const auto& r : reports) {
        rows.push_back({r.item_name, mean_pm_sd(r.a), mean_pm_sd(r.b), fixed(r.t, 3),
                        fixed(r.df, 2), format_p(r.p),
                        "[" + fixed(r.ci_low, 3) + ", " + fixed(r.ci_high, 3) + "]"});
    }

    std::ostringstream out;
    if (format == TableFormat::csv) {
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << csv_field(row[i]);
            }
            out << '\n';
        }
        return out.str();
    }

    std::vector<std::size_t> widths(rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
    }
    auto emit = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += row[i];
            if (i + 1 < row.size()) line.append(widths[i] - width(row[i]), ' ');
        }
        out << line << '\n';
    };
    emit(rows.front());
    std::size_t total = 2 * (widths.size() - 1);
    for (auto w : widths) total += w;
    out << std::string(total, '-') << '\n';
    for (std::size_t i = 1; i < rows.size(); ++i) emit(rows[i]);
    return out.str();
}

}  // namespace counterquill::stats
