#ifndef ABCLAB_LOGSPACE_HPP
#define ABCLAB_LOGSPACE_HPP

#include <cmath>
#include <limits>
#include <span>

namespace abclab {

// All densities and evidences live on the natural-log scale; -inf encodes a
// zero density.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_sum_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

inline double log_sum_exp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs)
        if (x > m) m = x;
    if (m == kNegInf || !std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// log(exp(a) - exp(b)) for a >= b.
inline double log_diff_exp(double a, double b) {
    if (b == kNegInf) return a;
    return a + std::log1p(-std::exp(b - a));
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double log_normal_pdf(double x, double mu, double variance) {
    const double d = x - mu;
    return -0.5 * std::log(2.0 * M_PI * variance) - d * d / (2.0 * variance);
}

}  // namespace abclab

#endif
