#ifndef ABCLAB_MODELS_MA_HPP
#define ABCLAB_MODELS_MA_HPP

#include <span>

#include "abclab/model.hpp"

namespace abclab {

// Moving-average model MA(q), q in {1,2}, with Gaussian innovations of known
// standard deviation and a uniform prior over the invertibility region:
// q=1: theta1 in (-1,1); q=2: theta2 in (-1,1), theta1+theta2 > -1,
// theta1-theta2 < 1.
struct MaSpec {
    int order = 1;
    double innovation_sd = 1.0;
};

bool ma_invertible(const MaSpec& spec, std::span<const double> theta);

// Empirical autocovariances at lags 0..max_lag, 1/n normalisation, centred.
SummaryVector autocovariances(const Dataset& y, int max_lag);

// Theoretical autocovariance at the given lag.
double ma_autocovariance(const MaSpec& spec, std::span<const double> theta, int lag);

// Exact Gaussian log-likelihood via banded Cholesky of the MA covariance.
double ma_log_likelihood(const MaSpec& spec, std::span<const double> theta,
                         const Dataset& y);

// summary_max_lag sets the autocovariance lags used as the ABC summary; when
// comparing against a higher-order model pass the larger order so the
// concatenated statistics coincide.
ModelSpec ma_model(const MaSpec& spec, int summary_max_lag = -1);

}  // namespace abclab

#endif
