#ifndef ABCLAB_MODEL_HPP
#define ABCLAB_MODEL_HPP

#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "abclab/random.hpp"

namespace abclab {

enum class DataKind { integer_valued, real_valued };

// Raw data y = (y_1, ..., y_n), stored as doubles even for count models.
struct Dataset {
    std::vector<double> values;
    DataKind kind = DataKind::real_valued;

    std::size_t n() const { return values.size(); }
    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
    double mean() const { return sum() / static_cast<double>(values.size()); }
};

using SummaryVector = std::vector<double>;

// Uniform model abstraction: prior, simulator, summary map, and optional
// exact-inference hooks (null when the quantity is intractable for the model).
// ModelSpec values are immutable after construction; every stochastic call
// takes the caller's stream.
struct ModelSpec {
    std::string name;

    std::function<std::vector<double>(RandomStream&)> prior_sample;
    std::function<double(std::span<const double>)> prior_logpdf;
    std::function<Dataset(std::span<const double> param, std::size_t n, RandomStream&)> simulate;
    std::function<SummaryVector(const Dataset&)> summary;

    // Component names; used for duplicate elimination when summaries are
    // concatenated across models.
    std::vector<std::string> summary_names;
    // Integer-valued summaries admit tolerance 0 exactly.
    bool integer_summary = false;

    // Exact hooks, each optional.
    std::function<double(const SummaryVector&, std::size_t n)> log_marginal_summary;
    std::function<double(const Dataset&)> log_evidence;
    std::function<double(const Dataset&)> log_g_factor;
};

}  // namespace abclab

#endif
