#include "abclab/models/normal_pair.hpp"

#include <cmath>
#include <stdexcept>

#include "abclab/logspace.hpp"

namespace abclab {

namespace {

double spread_s2(const Dataset& y) {
    const double ybar = y.mean();
    double s2 = 0.0;
    for (double v : y.values) s2 += (v - ybar) * (v - ybar);
    return s2;
}

}  // namespace

ModelSpec normal_known_variance_model(double sigma, double a, const std::string& name) {
    if (!(sigma > 0.0) || !(a > 0.0))
        throw std::domain_error("normal_known_variance_model: scales must be > 0");
    ModelSpec m;
    m.name = name;
    m.summary_names = {"ybar"};
    m.integer_summary = false;
    const double var = sigma * sigma;
    const double a2 = a * a;
    m.prior_sample = [a](RandomStream& s) -> std::vector<double> {
        return {sample_normal(s, 0.0, a)};
    };
    m.prior_logpdf = [a2](std::span<const double> p) {
        return log_normal_pdf(p[0], 0.0, a2);
    };
    m.simulate = [sigma](std::span<const double> p, std::size_t n, RandomStream& s) {
        Dataset d;
        d.kind = DataKind::real_valued;
        d.values.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            d.values.push_back(sample_normal(s, p[0], sigma));
        return d;
    };
    m.summary = [](const Dataset& y) -> SummaryVector { return {y.mean()}; };
    // ybar | mu ~ N(mu, sigma^2/n) against mu ~ N(0, a^2).
    m.log_marginal_summary = [var, a2](const SummaryVector& s, std::size_t n) {
        return log_normal_pdf(s[0], 0.0, a2 + var / static_cast<double>(n));
    };
    // w(y) = (2 pi sigma^2)^{-n/2} e^{-S^2/2sigma^2} sqrt(2 pi sigma^2 / n)
    //        * N(ybar; 0, a^2 + sigma^2/n)
    m.log_evidence = [var, a2](const Dataset& y) {
        const double nn = static_cast<double>(y.n());
        return -0.5 * nn * std::log(2.0 * M_PI * var) - spread_s2(y) / (2.0 * var) +
               0.5 * std::log(2.0 * M_PI * var / nn) +
               log_normal_pdf(y.mean(), 0.0, a2 + var / nn);
    };
    // Conditional density of (y_1 - ybar, ..., y_{n-1} - ybar) given ybar.
    m.log_g_factor = [var](const Dataset& y) {
        const double nn = static_cast<double>(y.n());
        return -0.5 * nn * std::log(2.0 * M_PI * var) - spread_s2(y) / (2.0 * var) +
               0.5 * std::log(2.0 * M_PI * var / nn);
    };
    return m;
}

std::pair<ModelSpec, ModelSpec> normal_pair(double sigma1, double sigma2, double a) {
    return {normal_known_variance_model(sigma1, a, "normal_s1"),
            normal_known_variance_model(sigma2, a, "normal_s2")};
}

double log_marginal_pair_normal(double ybar, double s2, std::size_t n,
                                double sigma, double a) {
    const double var = sigma * sigma;
    const double nn = static_cast<double>(n);
    const double x = s2 / var;  // chi^2 with n-1 degrees of freedom
    const double k = 0.5 * (nn - 1.0);
    const double log_chi2 = (k - 1.0) * std::log(x) - 0.5 * x - k * std::log(2.0) -
                            std::lgamma(k);
    return log_normal_pdf(ybar, 0.0, a * a + var / nn) + log_chi2 - std::log(var);
}

}  // namespace abclab
