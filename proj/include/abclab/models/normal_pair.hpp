#ifndef ABCLAB_MODELS_NORMAL_PAIR_HPP
#define ABCLAB_MODELS_NORMAL_PAIR_HPP

#include <utility>

#include "abclab/model.hpp"

namespace abclab {

// The two known-variance Gaussian models N(mu, sigma1^2) and N(mu, sigma2^2)
// with shared prior mu ~ N(0, a^2) and summary ybar.
std::pair<ModelSpec, ModelSpec> normal_pair(double sigma1, double sigma2, double a);

// Single model of the pair, exposed for reuse.
ModelSpec normal_known_variance_model(double sigma, double a, const std::string& name);

// Log joint density of the pair (ybar, S^2) under one model, mu integrated
// out: ybar ~ N(0, a^2 + sigma^2/n) and S^2/sigma^2 ~ chi^2_{n-1},
// independent.  The Bayes factor built from this pair equals the full-data
// Bayes factor.
double log_marginal_pair_normal(double ybar, double s2, std::size_t n,
                                double sigma, double a);

}  // namespace abclab

#endif
