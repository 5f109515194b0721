#pragma once

// Textbook re-derivations of the statistics, written without looking at the
// library code paths: Welford moments, the power series of the incomplete
// beta, and a plain bisection on that series for quantiles.

#include <cmath>
#include <vector>

namespace oracle {

struct Moments {
    double mean = 0.0;
    double var = 0.0;  // n - 1 denominator
};

inline Moments moments(const std::vector<double>& v) {
    double mean = 0.0;
    double m2 = 0.0;
    double k = 0.0;
    for (double x : v) {
        k += 1.0;
        const double delta = x - mean;
        mean += delta / k;
        m2 += delta * (x - mean);
    }
    return {mean, m2 / (k - 1.0)};
}

// I_x(a, b) = x^a (1-x)^b / (a B(a,b)) * sum_n [B(a+1,n+1)/B(a+b,n+1)] x^n,
// evaluated directly for x <= 1/2 and by symmetry above.
inline double ibeta(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x > 0.5) return 1.0 - ibeta(1.0 - x, b, a);
    const double log_front = a * std::log(x) + b * std::log1p(-x) - std::log(a) -
                             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    // term_n = prod_{k=0}^{n-1} (a+b+k)/(a+1+k) * x
    double sum = 1.0;
    double term = 1.0;
    for (int n = 0; n < 5000; ++n) {
        term *= (a + b + n) / (a + 1.0 + n) * x;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::exp(log_front) * sum;
}

inline double t_two_sided_p(double t, double df) { return ibeta(df / (df + t * t), df / 2.0, 0.5); }

inline double t_cdf(double x, double df) {
    const double tail = 0.5 * t_two_sided_p(x, df);
    return x >= 0.0 ? 1.0 - tail : tail;
}

inline double t_quantile_975(double df) {
    double lo = 0.0;
    double hi = 1000.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (t_cdf(mid, df) < 0.975 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Result {
    double mean_difference = 0.0;
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

inline Result paired(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a[i] - b[i]);
    const auto m = moments(d);
    const double n = static_cast<double>(d.size());
    const double se = std::sqrt(m.var / n);
    Result r;
    r.mean_difference = m.mean;
    r.df = n - 1.0;
    r.t = m.mean / se;
    r.p = t_two_sided_p(r.t, r.df);
    const double half = t_quantile_975(r.df) * se;
    r.ci_low = m.mean - half;
    r.ci_high = m.mean + half;
    return r;
}

inline Result welch(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ma = moments(a);
    const auto mb = moments(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double se2 = ma.var / na + mb.var / nb;
    Result r;
    r.mean_difference = ma.mean - mb.mean;
    r.t = r.mean_difference / std::sqrt(se2);
    r.df = se2 * se2 / (std::pow(ma.var / na, 2) / (na - 1.0) + std::pow(mb.var / nb, 2) / (nb - 1.0));
    r.p = t_two_sided_p(r.t, r.df);
    const double half = t_quantile_975(r.df) * std::sqrt(se2);
    r.ci_low = r.mean_difference - half;
    r.ci_high = r.mean_difference + half;
    return r;
}

// |x - y| within `rel` of the larger magnitude, with a tiny absolute floor
// for values that are zero up to rounding.
inline bool close(double x, double y, double rel = 1e-9) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::fabs(x - y) <= rel * std::max(std::fabs(x), std::fabs(y)) + 1e-12;
}

}  // namespace oracle
