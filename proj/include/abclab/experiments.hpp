#ifndef ABCLAB_EXPERIMENTS_HPP
#define ABCLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace abclab {

inline constexpr const char* kVersion = "abclab 0.1.0";

// Every experiment is a pure function of (config, seed): repeated runs with
// the same config produce byte-identical CSVs regardless of worker count.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::size_t workers = 1;
    bool paper_scale = false;

    // Scale knobs; 0 / empty means the experiment default.
    std::size_t n = 0;
    std::size_t reps = 0;
    std::size_t table_size = 0;
    std::size_t max_draws = 0;
    std::vector<double> quantiles;

    // Model parameters.
    double sigma1 = 0.1;
    double sigma2 = 10.0;
    double a = 1.0;
    double theta0 = 2.0;
    double grf_theta_max = 2.0;
    double ma_theta1 = 0.5;
    double ma_theta2 = 0.7;
    double ma_innovation_sd = 1.0;
};

struct ExperimentResult {
    std::string csv_path;
    std::string svg_path;
    std::string manifest_path;
    bool truncated = false;  // some ABC run exhausted its draw budget
};

// Exact vs ABC log Bayes factor for a pair of binary-chain Gibbs random
// fields, ABC at tolerance 0.
ExperimentResult exp_grf_agreement(const ExperimentConfig& config);

// Full-data vs summary-based log Bayes factors for the Poisson/geometric
// pair, closed forms, both data-generating laws.
ExperimentResult exp_poisson_geometric(const ExperimentConfig& config);

// Histograms of the exact log discrepancy g1/g2 for the normal pair under
// both data-generating laws.
ExperimentResult exp_normal_discrepancy(const ExperimentConfig& config);

// Limit studies over the n grid: Poisson/geometric summary Bayes factor in
// both evaluation modes with both candidate constants, and the normal-pair
// summary Bayes factor decaying to 0.
ExperimentResult exp_theorem_limits(const ExperimentConfig& config);

// MA(1) vs MA(2): ABC Bayes factor from an autocovariance reference table
// sweep against the exact quadrature Bayes factor.
ExperimentResult exp_ma_model_choice(const ExperimentConfig& config);

// Factorisation-identity suite over random datasets of both tractable pairs;
// returns the maximum absolute residual.
double run_factorisation_check(std::uint64_t seed, std::size_t datasets_per_pair = 100);

}  // namespace abclab

#endif
