#ifndef ABCLAB_ORACLE_HPP
#define ABCLAB_ORACLE_HPP

#include <stdexcept>
#include <vector>

#include "abclab/abc.hpp"
#include "abclab/model.hpp"

namespace abclab {

struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full-data Bayes factor w1(y)/w2(y) from the models' evidence hooks.
BayesFactorEstimate bf_true(const ModelSpec& model1, const ModelSpec& model2,
                            const Dataset& y);

// Bayes factor based on the summary statistic alone (the eps->0 limit of the
// ABC model-choice estimate).
BayesFactorEstimate bf_summary(const ModelSpec& model1, const ModelSpec& model2,
                               const SummaryVector& s, std::size_t n);

struct BfComparison {
    double log_bf_true = 0.0;
    double log_bf_summary = 0.0;
    double log_g_ratio = 0.0;
    double residual = 0.0;  // log_bf_true - log_g_ratio - log_bf_summary
};
BfComparison check_factorisation(const ModelSpec& model1, const ModelSpec& model2,
                                 const Dataset& y);

// Closed-form summary Bayes factors for the two tractable pairs.
// `paper_faithful` evaluates the printed formula (S+n)(S+n+1)/(S n) times
// (1+1/n)^{-S}, which is undefined at S=0; the default evaluates the
// quadrature-backed form (1+1/n)^{-S} (S+n)(S+n+1)/(n(n+1)).
enum class CountBfMode { derived, paper_faithful };
double log_bf_eta_count(double S, std::size_t n, CountBfMode mode = CountBfMode::derived);
double log_bf_eta_normal(double ybar, std::size_t n, double sigma1, double sigma2,
                         double a);

struct LimitStudy {
    std::vector<std::size_t> n_grid;
    std::vector<double> values;  // log Bayes factor on the summary, per n
    double paper_constant = 0.0;
    double derived_constant = 0.0;
};

// Poisson-vs-geometric limit: evaluates the summary Bayes factor at
// S = round(n*theta0) over the grid.  derived_constant is
// log[(theta0+1)^2 e^{-theta0}], paper_constant subtracts log(theta0).
LimitStudy theorem1_study(double theta0, const std::vector<std::size_t>& n_grid,
                          CountBfMode mode = CountBfMode::derived);

// Normal-pair limit on data simulated iid N(data_mean, data_sd^2); the
// summary Bayes factor tends to 1 (log to 0) at rate O(1/n).
LimitStudy theorem2_study(double sigma1, double sigma2, double a,
                          const std::vector<std::size_t>& n_grid,
                          RandomStream& stream, double data_mean = 0.0,
                          double data_sd = 1.0);

// Exact log g1/g2 on `reps` datasets simulated under models[data_model_index]
// with parameters drawn from its prior.
std::vector<double> discrepancy_samples(const std::vector<ModelSpec>& pair,
                                        std::size_t data_model_index, std::size_t n,
                                        std::size_t reps, RandomStream& stream,
                                        std::size_t workers = 1);

}  // namespace abclab

#endif
