#ifndef ABCLAB_ABC_HPP
#define ABCLAB_ABC_HPP

#include <optional>
#include <string>
#include <vector>

#include "abclab/model.hpp"

namespace abclab {

// Distance on summary space: Euclidean, or per-coordinate scaled Euclidean
// when a (strictly positive) scale vector is set.
struct DistanceSpec {
    std::vector<double> scale;  // empty: plain Euclidean

    double operator()(std::span<const double> a, std::span<const double> b) const;
};

struct AbcConfig {
    std::size_t target_accepts = 1000;
    // Exactly one of the two must be set.
    std::optional<double> epsilon;   // fixed tolerance, >= 0
    std::optional<double> quantile;  // acceptance quantile in (0, 1]
    DistanceSpec distance;
    std::size_t max_draws = 10'000'000;
    // Retain each accepted particle's simulated dataset (Eq-exactness checks).
    bool keep_data = false;
};

struct Particle {
    int model_index = 0;
    std::vector<double> parameter;
    SummaryVector summary;
    double distance = 0.0;
};

struct AbcRun {
    std::vector<Particle> accepted;
    std::vector<Dataset> accepted_data;  // filled when config.keep_data
    std::size_t total_draws = 0;
    SummaryVector observed_summary;
    AbcConfig config;
    std::vector<std::size_t> per_model_draws;
    std::vector<std::size_t> per_model_accepts;
    double realised_epsilon = 0.0;
    // max_draws ran out before target_accepts in fixed-epsilon mode.
    bool truncated = false;
};

// Rejection sampler for a single model: propose from the prior, simulate a
// dataset of size n, accept when the summary is within tolerance of observed.
AbcRun abc_sample(const ModelSpec& model, const SummaryVector& observed,
                  std::size_t n, const AbcConfig& config, RandomStream& stream);

// Summary names and per-model component positions of the duplicate-free
// concatenation of all models' summaries.
struct ConcatSummary {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> positions;  // per model, per component
    bool integer_valued = false;
};
ConcatSummary concat_summary_layout(const std::vector<ModelSpec>& models);
SummaryVector concat_summary(const std::vector<ModelSpec>& models,
                             const ConcatSummary& layout, const Dataset& z);

// Model-choice rejection sampler: propose the model index from model_prior,
// then parameter and data from the chosen model; the distance is computed on
// the concatenated summary.
AbcRun abc_model_choice(const std::vector<ModelSpec>& models,
                        const std::vector<double>& model_prior,
                        const Dataset& observed_data, const AbcConfig& config,
                        RandomStream& stream);

// Reference table: T prior draws of (model, parameter, summary), reusable
// across tolerance sweeps.  Row r is generated from substream derive(r), so
// the table is identical for any worker count.
struct TableRow {
    int model_index = 0;
    std::vector<double> parameter;
    SummaryVector summary;
};
struct ReferenceTable {
    std::vector<TableRow> rows;
    std::vector<std::string> summary_names;
    std::size_t model_count = 0;
};
ReferenceTable build_reference_table(const std::vector<ModelSpec>& models,
                                     const std::vector<double>& model_prior,
                                     std::size_t n, std::size_t T,
                                     RandomStream& stream, std::size_t workers = 1);

struct SweepRow {
    double quantile = 1.0;
    double epsilon = 0.0;
    std::vector<std::size_t> per_model_accepts;
    std::size_t total_accepts = 0;
};
// Re-threshold a fixed table at each quantile (strictly decreasing, in (0,1]).
// epsilon is the k-th smallest distance with k = ceil(q*T); ties at epsilon
// are all accepted.
std::vector<SweepRow> tolerance_sweep(const ReferenceTable& table,
                                      const SummaryVector& observed,
                                      const DistanceSpec& distance,
                                      const std::vector<double>& quantiles);

struct PosteriorProbs {
    std::vector<double> probs;
    std::vector<double> standard_errors;
    bool zero_count = false;
};
PosteriorProbs estimate_posterior_probs(const std::vector<std::size_t>& accept_counts,
                                        const std::vector<double>& proposal_prior,
                                        const std::vector<double>& target_prior = {});

enum class Provenance { abc, closed_form, quadrature, enumeration };

struct BayesFactorEstimate {
    double log_bf = 0.0;
    double mc_standard_error = 0.0;
    Provenance provenance = Provenance::abc;
    bool zero_count = false;
};

BayesFactorEstimate estimate_bayes_factor(const std::vector<std::size_t>& accept_counts,
                                          std::size_t i, std::size_t j,
                                          const std::vector<double>& model_prior);

std::vector<std::size_t> accept_counts(const AbcRun& run, std::size_t model_count);

// Per-coordinate median absolute deviation of the table summaries; zero MADs
// are replaced by 1 so the scale stays strictly positive.
std::vector<double> table_mad_scale(const ReferenceTable& table);

}  // namespace abclab

#endif
