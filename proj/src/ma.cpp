#include "abclab/models/ma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "abclab/logspace.hpp"
#include "abclab/quadrature.hpp"

namespace abclab {

namespace {

void validate(const MaSpec& spec) {
    if (spec.order != 1 && spec.order != 2)
        throw std::invalid_argument("ma: order must be 1 or 2");
    if (!(spec.innovation_sd > 0.0))
        throw std::invalid_argument("ma: innovation_sd must be > 0");
}

}  // namespace

bool ma_invertible(const MaSpec& spec, std::span<const double> theta) {
    if (spec.order == 1) return theta[0] > -1.0 && theta[0] < 1.0;
    const double t1 = theta[0], t2 = theta[1];
    return t2 > -1.0 && t2 < 1.0 && t1 + t2 > -1.0 && t1 - t2 < 1.0;
}

SummaryVector autocovariances(const Dataset& y, int max_lag) {
    const std::size_t n = y.n();
    const double ybar = y.mean();
    SummaryVector out;
    out.reserve(max_lag + 1);
    for (int lag = 0; lag <= max_lag; ++lag) {
        double c = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t)
            c += (y.values[t] - ybar) * (y.values[t + lag] - ybar);
        out.push_back(c / static_cast<double>(n));
    }
    return out;
}

double ma_autocovariance(const MaSpec& spec, std::span<const double> theta, int lag) {
    const double v = spec.innovation_sd * spec.innovation_sd;
    // coefficients psi_0 = 1, psi_1 = theta1, psi_2 = theta2
    double psi[3] = {1.0, 0.0, 0.0};
    for (int i = 0; i < spec.order; ++i) psi[i + 1] = theta[i];
    double g = 0.0;
    for (int i = 0; i + lag <= spec.order; ++i) g += psi[i] * psi[i + lag];
    return v * g;
}

double ma_log_likelihood(const MaSpec& spec, std::span<const double> theta,
                         const Dataset& y) {
    validate(spec);
    const std::size_t n = y.n();
    const int q = spec.order;
    double gamma[3] = {0.0, 0.0, 0.0};
    for (int lag = 0; lag <= q; ++lag) gamma[lag] = ma_autocovariance(spec, theta, lag);

    // Banded Cholesky of the Toeplitz covariance, bandwidth q.
    // band[i][d] = L[i][i-d], d = 0..q.
    std::vector<std::array<double, 3>> band(n, {0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t jlo = i >= static_cast<std::size_t>(q) ? i - q : 0;
        for (std::size_t j = jlo; j <= i; ++j) {
            double sum = gamma[i - j];
            const std::size_t klo = std::max(jlo, j >= static_cast<std::size_t>(q) ? j - q : 0);
            for (std::size_t k = klo; k < j; ++k)
                sum -= band[i][i - k] * band[j][j - k];
            if (i == j) {
                if (!(sum > 0.0)) return kNegInf;
                band[i][0] = std::sqrt(sum);
            } else {
                band[i][i - j] = sum / band[j][0];
            }
        }
    }
    // Forward solve L v = y.
    double log_det_half = 0.0;
    double quad = 0.0;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = y.values[i];
        const std::size_t jlo = i >= static_cast<std::size_t>(q) ? i - q : 0;
        for (std::size_t j = jlo; j < i; ++j) sum -= band[i][i - j] * v[j];
        v[i] = sum / band[i][0];
        log_det_half += std::log(band[i][0]);
        quad += v[i] * v[i];
    }
    return -0.5 * static_cast<double>(n) * std::log(2.0 * M_PI) - log_det_half -
           0.5 * quad;
}

ModelSpec ma_model(const MaSpec& spec, int summary_max_lag) {
    validate(spec);
    const int max_lag = summary_max_lag < 0 ? spec.order : summary_max_lag;
    ModelSpec m;
    m.name = "ma" + std::to_string(spec.order);
    for (int lag = 0; lag <= max_lag; ++lag)
        m.summary_names.push_back("acov_" + std::to_string(lag));
    m.integer_summary = false;
    const MaSpec s = spec;

    m.prior_sample = [s](RandomStream& st) -> std::vector<double> {
        if (s.order == 1) return {sample_uniform(st, -1.0, 1.0)};
        // rejection from the bounding box of the invertibility triangle
        while (true) {
            std::vector<double> theta = {sample_uniform(st, -2.0, 2.0),
                                         sample_uniform(st, -1.0, 1.0)};
            if (ma_invertible(s, theta)) return theta;
        }
    };
    m.prior_logpdf = [s](std::span<const double> theta) {
        if (!ma_invertible(s, theta)) return kNegInf;
        return s.order == 1 ? -std::log(2.0) : -std::log(4.0);
    };
    m.simulate = [s](std::span<const double> theta, std::size_t n, RandomStream& st) {
        Dataset d;
        d.kind = DataKind::real_valued;
        d.values.reserve(n);
        const int q = s.order;
        double e[3] = {0.0, 0.0, 0.0};  // e[0]=e_t, e[1]=e_{t-1}, e[2]=e_{t-2}
        for (int i = 0; i < q; ++i)
            e[i + 1] = sample_normal(st, 0.0, s.innovation_sd);
        for (std::size_t t = 0; t < n; ++t) {
            e[0] = sample_normal(st, 0.0, s.innovation_sd);
            double yt = e[0];
            for (int i = 0; i < q; ++i) yt += theta[i] * e[i + 1];
            d.values.push_back(yt);
            e[2] = e[1];
            e[1] = e[0];
        }
        return d;
    };
    m.summary = [max_lag](const Dataset& y) { return autocovariances(y, max_lag); };

    if (spec.order == 1) {
        m.log_evidence = [s](const Dataset& y) {
            return integrate_log(
                [&](double t1) {
                    const double theta[1] = {t1};
                    return ma_log_likelihood(s, theta, y) - std::log(2.0);
                },
                -1.0, 1.0, 1e-7);
        };
    } else {
        // 2-D tensor rule over the invertibility triangle.
        m.log_evidence = [s](const Dataset& y) {
            const auto outer = gauss15_points(-1.0, 1.0, 8);
            std::vector<double> terms;
            terms.reserve(outer.size() * 60);
            for (const auto& [t2, lw2] : outer) {
                const auto inner = gauss15_points(-1.0 - t2, 1.0 + t2, 4);
                for (const auto& [t1, lw1] : inner) {
                    const double theta[2] = {t1, t2};
                    terms.push_back(lw1 + lw2 - std::log(4.0) +
                                    ma_log_likelihood(s, theta, y));
                }
            }
            return log_sum_exp(terms);
        };
    }
    // No log_marginal_summary: the autocovariance summary has no tractable
    // density; the MA models are ABC-only on the summary side.
    return m;
}

}  // namespace abclab
