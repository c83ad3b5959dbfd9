#include "abclab/abc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "abclab/parallel.hpp"

namespace abclab {

double DistanceSpec::operator()(std::span<const double> a,
                                std::span<const double> b) const {
    double s = 0.0;
    if (scale.empty()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = (a[i] - b[i]) / scale[i];
            s += d * d;
        }
    }
    return std::sqrt(s);
}

namespace {

void validate_config(const AbcConfig& config, bool integer_summary) {
    if (config.epsilon.has_value() == config.quantile.has_value())
        throw std::invalid_argument("abc: set exactly one of epsilon and quantile");
    if (config.epsilon) {
        if (*config.epsilon < 0.0)
            throw std::invalid_argument("abc: epsilon must be >= 0");
        if (*config.epsilon == 0.0 && !integer_summary)
            throw std::invalid_argument(
                "abc: epsilon 0 requires an integer-valued summary");
    }
    if (config.quantile && (*config.quantile <= 0.0 || *config.quantile > 1.0))
        throw std::invalid_argument("abc: quantile must be in (0,1]");
    if (config.target_accepts < 1)
        throw std::invalid_argument("abc: target_accepts must be >= 1");
    for (double s : config.distance.scale)
        if (!(s > 0.0))
            throw std::invalid_argument("abc: scale vector must be strictly positive");
}

struct Proposal {
    int model_index;
    std::vector<double> parameter;
    SummaryVector summary;
    Dataset data;
};

// Shared rejection loop; `propose` draws one (model, parameter, data, summary).
template <typename ProposeFn>
AbcRun rejection_loop(ProposeFn&& propose, const SummaryVector& observed,
                      const AbcConfig& config, std::size_t model_count,
                      RandomStream& stream) {
    AbcRun run;
    run.observed_summary = observed;
    run.config = config;
    run.per_model_draws.assign(model_count, 0);
    run.per_model_accepts.assign(model_count, 0);

    if (config.epsilon) {
        const double eps = *config.epsilon;
        run.realised_epsilon = eps;
        std::size_t t = 0;
        while (run.accepted.size() < config.target_accepts && t < config.max_draws) {
            RandomStream sub = stream.derive(t);
            Proposal p = propose(sub);
            ++run.per_model_draws[p.model_index];
            const double d = config.distance(p.summary, observed);
            if (d <= eps) {
                ++run.per_model_accepts[p.model_index];
                run.accepted.push_back(
                    {p.model_index, std::move(p.parameter), std::move(p.summary), d});
                if (config.keep_data) run.accepted_data.push_back(std::move(p.data));
            }
            ++t;
        }
        run.total_draws = t;
        run.truncated = run.accepted.size() < config.target_accepts;
        return run;
    }

    // Quantile mode: fixed budget of max_draws proposals, keep the q-fraction
    // with smallest distances (ties at the threshold included).
    const std::size_t T = config.max_draws;
    std::vector<Particle> all;
    std::vector<Dataset> all_data;
    all.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        RandomStream sub = stream.derive(t);
        Proposal p = propose(sub);
        ++run.per_model_draws[p.model_index];
        const double d = config.distance(p.summary, observed);
        all.push_back({p.model_index, std::move(p.parameter), std::move(p.summary), d});
        if (config.keep_data) all_data.push_back(std::move(p.data));
    }
    run.total_draws = T;
    std::vector<double> dists(T);
    for (std::size_t t = 0; t < T; ++t) dists[t] = all[t].distance;
    const std::size_t k = std::min<std::size_t>(
        T, static_cast<std::size_t>(std::ceil(*config.quantile * static_cast<double>(T))));
    std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
    const double eps = dists[k - 1];
    run.realised_epsilon = eps;
    for (std::size_t t = 0; t < T; ++t)
        if (all[t].distance <= eps) {
            ++run.per_model_accepts[all[t].model_index];
            run.accepted.push_back(std::move(all[t]));
            if (config.keep_data) run.accepted_data.push_back(std::move(all_data[t]));
        }
    return run;
}

}  // namespace

AbcRun abc_sample(const ModelSpec& model, const SummaryVector& observed,
                  std::size_t n, const AbcConfig& config, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("abc_sample: n must be >= 1");
    validate_config(config, model.integer_summary);
    auto propose = [&](RandomStream& sub) {
        Proposal p;
        p.model_index = 0;
        p.parameter = model.prior_sample(sub);
        p.data = model.simulate(p.parameter, n, sub);
        p.summary = model.summary(p.data);
        return p;
    };
    return rejection_loop(propose, observed, config, 1, stream);
}

ConcatSummary concat_summary_layout(const std::vector<ModelSpec>& models) {
    ConcatSummary layout;
    layout.integer_valued = true;
    for (const auto& m : models) {
        std::vector<std::size_t> pos;
        for (const auto& name : m.summary_names) {
            auto it = std::find(layout.names.begin(), layout.names.end(), name);
            if (it == layout.names.end()) {
                pos.push_back(layout.names.size());
                layout.names.push_back(name);
            } else {
                pos.push_back(static_cast<std::size_t>(it - layout.names.begin()));
            }
        }
        layout.positions.push_back(std::move(pos));
        if (!m.integer_summary) layout.integer_valued = false;
    }
    return layout;
}

SummaryVector concat_summary(const std::vector<ModelSpec>& models,
                             const ConcatSummary& layout, const Dataset& z) {
    SummaryVector out(layout.names.size(), 0.0);
    for (std::size_t m = 0; m < models.size(); ++m) {
        const SummaryVector s = models[m].summary(z);
        for (std::size_t c = 0; c < s.size(); ++c) out[layout.positions[m][c]] = s[c];
    }
    return out;
}

AbcRun abc_model_choice(const std::vector<ModelSpec>& models,
                        const std::vector<double>& model_prior,
                        const Dataset& observed_data, const AbcConfig& config,
                        RandomStream& stream) {
    if (models.size() < 2)
        throw std::invalid_argument("abc_model_choice: need at least two models");
    if (model_prior.size() != models.size())
        throw std::invalid_argument("abc_model_choice: prior size mismatch");
    const ConcatSummary layout = concat_summary_layout(models);
    validate_config(config, layout.integer_valued);
    const SummaryVector observed = concat_summary(models, layout, observed_data);
    const std::size_t n = observed_data.n();
    auto propose = [&](RandomStream& sub) {
        Proposal p;
        p.model_index = static_cast<int>(sample_categorical(sub, model_prior));
        p.parameter = models[p.model_index].prior_sample(sub);
        p.data = models[p.model_index].simulate(p.parameter, n, sub);
        p.summary = concat_summary(models, layout, p.data);
        return p;
    };
    return rejection_loop(propose, observed, config, models.size(), stream);
}

ReferenceTable build_reference_table(const std::vector<ModelSpec>& models,
                                     const std::vector<double>& model_prior,
                                     std::size_t n, std::size_t T,
                                     RandomStream& stream, std::size_t workers) {
    if (T < 1) throw std::invalid_argument("build_reference_table: T must be >= 1");
    if (model_prior.size() != models.size())
        throw std::invalid_argument("build_reference_table: prior size mismatch");
    const ConcatSummary layout = concat_summary_layout(models);
    ReferenceTable table;
    table.summary_names = layout.names;
    table.model_count = models.size();
    table.rows.resize(T);
    parallel_for(T, workers, [&](std::size_t r) {
        RandomStream sub = stream.derive(r);
        TableRow& row = table.rows[r];
        row.model_index = static_cast<int>(sample_categorical(sub, model_prior));
        row.parameter = models[row.model_index].prior_sample(sub);
        const Dataset z = models[row.model_index].simulate(row.parameter, n, sub);
        row.summary = concat_summary(models, layout, z);
    });
    return table;
}

std::vector<SweepRow> tolerance_sweep(const ReferenceTable& table,
                                      const SummaryVector& observed,
                                      const DistanceSpec& distance,
                                      const std::vector<double>& quantiles) {
    for (std::size_t i = 0; i + 1 < quantiles.size(); ++i)
        if (!(quantiles[i] > quantiles[i + 1]))
            throw std::invalid_argument("tolerance_sweep: quantiles must strictly decrease");
    for (double q : quantiles)
        if (!(q > 0.0) || q > 1.0)
            throw std::invalid_argument("tolerance_sweep: quantiles must be in (0,1]");

    const std::size_t T = table.rows.size();
    std::vector<double> dists(T);
    for (std::size_t t = 0; t < T; ++t)
        dists[t] = distance(table.rows[t].summary, observed);
    std::vector<double> sorted = dists;
    std::sort(sorted.begin(), sorted.end());

    std::vector<SweepRow> out;
    out.reserve(quantiles.size());
    for (double q : quantiles) {
        SweepRow row;
        row.quantile = q;
        const std::size_t k = std::min<std::size_t>(
            T, static_cast<std::size_t>(std::ceil(q * static_cast<double>(T))));
        row.epsilon = sorted[k - 1];
        row.per_model_accepts.assign(table.model_count, 0);
        for (std::size_t t = 0; t < T; ++t)
            if (dists[t] <= row.epsilon)
                ++row.per_model_accepts[table.rows[t].model_index];
        for (std::size_t c : row.per_model_accepts) row.total_accepts += c;
        out.push_back(std::move(row));
    }
    return out;
}

PosteriorProbs estimate_posterior_probs(const std::vector<std::size_t>& counts,
                                        const std::vector<double>& proposal_prior,
                                        const std::vector<double>& target_prior) {
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) throw std::runtime_error("estimate_posterior_probs: zero accepts");
    PosteriorProbs out;
    double norm = 0.0;
    for (std::size_t m = 0; m < counts.size(); ++m) {
        double w = static_cast<double>(counts[m]);
        if (!target_prior.empty()) w *= target_prior[m] / proposal_prior[m];
        out.probs.push_back(w);
        norm += w;
        if (counts[m] == 0) out.zero_count = true;
    }
    for (double& p : out.probs) p /= norm;
    for (double p : out.probs)
        out.standard_errors.push_back(
            std::sqrt(p * (1.0 - p) / static_cast<double>(total)));
    return out;
}

BayesFactorEstimate estimate_bayes_factor(const std::vector<std::size_t>& counts,
                                          std::size_t i, std::size_t j,
                                          const std::vector<double>& model_prior) {
    BayesFactorEstimate est;
    est.provenance = Provenance::abc;
    const double ci = static_cast<double>(counts[i]);
    const double cj = static_cast<double>(counts[j]);
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    const double prior_term = std::log(model_prior[j]) - std::log(model_prior[i]);
    if (counts[i] == 0 || counts[j] == 0) {
        est.zero_count = true;
        est.log_bf = counts[i] == 0 ? -std::numeric_limits<double>::infinity()
                                    : std::numeric_limits<double>::infinity();
        est.mc_standard_error = std::numeric_limits<double>::infinity();
        return est;
    }
    est.log_bf = prior_term + std::log(ci) - std::log(cj);
    est.mc_standard_error =
        std::sqrt(1.0 / ci + 1.0 / cj - 2.0 / static_cast<double>(total));
    return est;
}

std::vector<std::size_t> accept_counts(const AbcRun& run, std::size_t model_count) {
    std::vector<std::size_t> counts(model_count, 0);
    for (const auto& p : run.accepted) ++counts[p.model_index];
    return counts;
}

std::vector<double> table_mad_scale(const ReferenceTable& table) {
    const std::size_t dim = table.summary_names.size();
    std::vector<double> scale(dim, 1.0);
    std::vector<double> col(table.rows.size());
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            col[r] = table.rows[r].summary[c];
        auto mid = col.begin() + col.size() / 2;
        std::nth_element(col.begin(), mid, col.end());
        const double med = *mid;
        for (double& v : col) v = std::abs(v - med);
        std::nth_element(col.begin(), mid, col.end());
        scale[c] = *mid > 0.0 ? *mid : 1.0;
    }
    return scale;
}

}  // namespace abclab
