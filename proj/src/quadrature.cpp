#include "abclab/quadrature.hpp"

#include <array>
#include <cmath>

#include "abclab/logspace.hpp"

namespace abclab {

namespace {

// 15-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854,
};
constexpr std::array<double, 8> kWeights = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

double panel_log(const std::function<double(double)>& log_f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double log_h = std::log(h);
    double vals[15];
    int k = 0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
        const double lw = std::log(kWeights[i]) + log_h;
        vals[k++] = lw + log_f(c + h * kNodes[i]);
        if (i > 0) vals[k++] = lw + log_f(c - h * kNodes[i]);
    }
    return log_sum_exp(std::span<const double>(vals, 15));
}

struct Adaptive {
    const std::function<double(double)>& log_f;
    double rel_tol;
    static constexpr int kMaxDepth = 48;
    // Panels this far (in log) below the largest estimate seen so far cannot
    // move the total at double resolution; they are accepted as-is.  Without
    // this cutoff the doubly-exponential tails of transformed infinite
    // domains never satisfy the log-space tolerance.
    static constexpr double kNegligible = 760.0;

    double refine(double a, double b, double whole, int depth, double& scale) const {
        const double mid = 0.5 * (a + b);
        const double left = panel_log(log_f, a, mid);
        const double right = panel_log(log_f, mid, b);
        const double combined = log_sum_exp(left, right);
        if (combined > scale) scale = combined;
        if (whole == kNegInf && combined == kNegInf) return kNegInf;
        if (combined <= scale - kNegligible) return combined;
        if (whole != kNegInf && combined != kNegInf &&
            std::abs(whole - combined) <= rel_tol)
            return combined;
        if (depth >= kMaxDepth)
            throw IntegrationError("integrate_log: max refinement depth reached", a, b);
        // Dominant child first, so `scale` is established before weak tails.
        if (left >= right)
            return log_sum_exp(refine(a, mid, left, depth + 1, scale),
                               refine(mid, b, right, depth + 1, scale));
        return log_sum_exp(refine(mid, b, right, depth + 1, scale),
                           refine(a, mid, left, depth + 1, scale));
    }

    double run(double a, double b) const {
        double scale = kNegInf;
        return refine(a, b, panel_log(log_f, a, b), 0, scale);
    }
};

}  // namespace

std::vector<std::pair<double, double>> gauss15_points(double lo, double hi, int panels) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(panels) * 15);
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double c = a + 0.5 * width;
        const double h = 0.5 * width;
        const double log_h = std::log(h);
        for (std::size_t i = 0; i < kNodes.size(); ++i) {
            const double lw = std::log(kWeights[i]) + log_h;
            pts.emplace_back(c + h * kNodes[i], lw);
            if (i > 0) pts.emplace_back(c - h * kNodes[i], lw);
        }
    }
    return pts;
}

double integrate_log(const std::function<double(double)>& log_f,
                     double lo, double hi, double rel_tol) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
        throw std::invalid_argument("integrate_log: interval must satisfy lo < hi");
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (lo_inf && hi_inf) {
        return log_sum_exp(integrate_log(log_f, lo, 0.0, rel_tol),
                           integrate_log(log_f, 0.0, hi, rel_tol));
    }
    if (hi_inf) {
        // x = lo + t/(1-t), dx = dt/(1-t)^2
        auto g = [&](double t) {
            const double om = 1.0 - t;
            return log_f(lo + t / om) - 2.0 * std::log(om);
        };
        Adaptive ad{g, rel_tol};
        return ad.run(0.0, 1.0);
    }
    if (lo_inf) {
        auto g = [&](double t) {
            const double om = 1.0 - t;
            return log_f(hi - t / om) - 2.0 * std::log(om);
        };
        Adaptive ad{g, rel_tol};
        return ad.run(0.0, 1.0);
    }
    Adaptive ad{log_f, rel_tol};
    return ad.run(lo, hi);
}

}  // namespace abclab
