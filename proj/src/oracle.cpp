#include "abclab/oracle.hpp"

#include <cmath>

#include "abclab/logspace.hpp"
#include "abclab/parallel.hpp"

namespace abclab {

BayesFactorEstimate bf_true(const ModelSpec& model1, const ModelSpec& model2,
                            const Dataset& y) {
    if (!model1.log_evidence)
        throw CapabilityError("bf_true: model '" + model1.name + "' has no evidence hook");
    if (!model2.log_evidence)
        throw CapabilityError("bf_true: model '" + model2.name + "' has no evidence hook");
    BayesFactorEstimate est;
    est.provenance = Provenance::closed_form;
    est.log_bf = model1.log_evidence(y) - model2.log_evidence(y);
    est.mc_standard_error = 0.0;
    return est;
}

BayesFactorEstimate bf_summary(const ModelSpec& model1, const ModelSpec& model2,
                               const SummaryVector& s, std::size_t n) {
    if (!model1.log_marginal_summary)
        throw CapabilityError("bf_summary: model '" + model1.name +
                              "' has no summary-marginal hook");
    if (!model2.log_marginal_summary)
        throw CapabilityError("bf_summary: model '" + model2.name +
                              "' has no summary-marginal hook");
    BayesFactorEstimate est;
    est.provenance = Provenance::closed_form;
    est.log_bf = model1.log_marginal_summary(s, n) - model2.log_marginal_summary(s, n);
    est.mc_standard_error = 0.0;
    return est;
}

BfComparison check_factorisation(const ModelSpec& model1, const ModelSpec& model2,
                                 const Dataset& y) {
    if (!model1.log_evidence || !model1.log_marginal_summary || !model1.log_g_factor)
        throw CapabilityError("check_factorisation: model '" + model1.name +
                              "' lacks exact hooks");
    if (!model2.log_evidence || !model2.log_marginal_summary || !model2.log_g_factor)
        throw CapabilityError("check_factorisation: model '" + model2.name +
                              "' lacks exact hooks");
    BfComparison cmp;
    cmp.log_bf_true = model1.log_evidence(y) - model2.log_evidence(y);
    cmp.log_bf_summary = model1.log_marginal_summary(model1.summary(y), y.n()) -
                         model2.log_marginal_summary(model2.summary(y), y.n());
    cmp.log_g_ratio = model1.log_g_factor(y) - model2.log_g_factor(y);
    cmp.residual = cmp.log_bf_true - cmp.log_g_ratio - cmp.log_bf_summary;
    return cmp;
}

double log_bf_eta_count(double S, std::size_t n, CountBfMode mode) {
    const double nn = static_cast<double>(n);
    const double shrink = -S * std::log1p(1.0 / nn);
    if (mode == CountBfMode::paper_faithful) {
        if (S == 0.0)
            throw std::domain_error(
                "log_bf_eta_count: paper-faithful formula is undefined at S=0");
        return shrink + std::log(S + nn) + std::log(S + nn + 1.0) - std::log(S) -
               std::log(nn);
    }
    return shrink + std::log(S + nn) + std::log(S + nn + 1.0) - std::log(nn) -
           std::log(nn + 1.0);
}

double log_bf_eta_normal(double ybar, std::size_t n, double sigma1, double sigma2,
                         double a) {
    const double nn = static_cast<double>(n);
    const double v1 = a * a + sigma1 * sigma1 / nn;
    const double v2 = a * a + sigma2 * sigma2 / nn;
    return log_normal_pdf(ybar, 0.0, v1) - log_normal_pdf(ybar, 0.0, v2);
}

LimitStudy theorem1_study(double theta0, const std::vector<std::size_t>& n_grid,
                          CountBfMode mode) {
    if (!(theta0 > 0.0)) throw std::domain_error("theorem1_study: theta0 must be > 0");
    LimitStudy study;
    study.n_grid = n_grid;
    study.derived_constant = 2.0 * std::log(theta0 + 1.0) - theta0;
    study.paper_constant = study.derived_constant - std::log(theta0);
    for (std::size_t n : n_grid) {
        const double S = std::round(theta0 * static_cast<double>(n));
        study.values.push_back(log_bf_eta_count(S, n, mode));
    }
    return study;
}

LimitStudy theorem2_study(double sigma1, double sigma2, double a,
                          const std::vector<std::size_t>& n_grid,
                          RandomStream& stream, double data_mean, double data_sd) {
    LimitStudy study;
    study.n_grid = n_grid;
    study.derived_constant = 0.0;  // log of the limit 1
    study.paper_constant = 0.0;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        RandomStream sub = stream.derive(g);
        const std::size_t n = n_grid[g];
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sum += sample_normal(sub, data_mean, data_sd);
        const double ybar = sum / static_cast<double>(n);
        study.values.push_back(log_bf_eta_normal(ybar, n, sigma1, sigma2, a));
    }
    return study;
}

std::vector<double> discrepancy_samples(const std::vector<ModelSpec>& pair,
                                        std::size_t data_model_index, std::size_t n,
                                        std::size_t reps, RandomStream& stream,
                                        std::size_t workers) {
    if (pair.size() != 2)
        throw std::invalid_argument("discrepancy_samples: expected a model pair");
    for (const auto& m : pair)
        if (!m.log_g_factor)
            throw CapabilityError("discrepancy_samples: model '" + m.name +
                                  "' has no g-factor hook");
    const ModelSpec& gen = pair[data_model_index];
    std::vector<double> out(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
        RandomStream sub = stream.derive(r);
        const auto param = gen.prior_sample(sub);
        const Dataset y = gen.simulate(param, n, sub);
        out[r] = pair[0].log_g_factor(y) - pair[1].log_g_factor(y);
    });
    return out;
}

}  // namespace abclab
