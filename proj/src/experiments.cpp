#include "abclab/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "abclab/csv.hpp"
#include "abclab/logspace.hpp"
#include "abclab/models/count.hpp"
#include "abclab/models/grf.hpp"
#include "abclab/models/ma.hpp"
#include "abclab/models/normal_pair.hpp"
#include "abclab/oracle.hpp"
#include "abclab/parallel.hpp"
#include "abclab/svg.hpp"

namespace abclab {

namespace {

namespace fs = std::filesystem;

using Row = std::vector<std::optional<double>>;

struct Paths {
    std::string dir, csv, svg, manifest;
};

Paths experiment_paths(const ExperimentConfig& config, const std::string& name) {
    Paths p;
    p.dir = (fs::path(config.out_dir) / name).string();
    fs::create_directories(p.dir);
    p.csv = (fs::path(p.dir) / "data.csv").string();
    p.svg = (fs::path(p.dir) / "plot.svg").string();
    p.manifest = (fs::path(p.dir) / "manifest").string();
    return p;
}

void write_manifest(const Paths& paths, const ExperimentConfig& config,
                    const std::string& experiment,
                    const std::vector<std::pair<std::string, std::string>>& resolved) {
    std::ofstream out(paths.manifest, std::ios::binary);
    out << "version=" << kVersion << "\n"
        << "experiment=" << experiment << "\n"
        << "seed=" << config.seed << "\n"
        << "workers=" << config.workers << "\n"
        << "paper_scale=" << (config.paper_scale ? 1 : 0) << "\n";
    for (const auto& [k, v] : resolved) out << k << "=" << v << "\n";
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

std::vector<double> default_quantiles(const ExperimentConfig& config) {
    return config.quantiles.empty() ? std::vector<double>{0.1, 0.01, 0.001}
                                    : config.quantiles;
}

}  // namespace

ExperimentResult exp_grf_agreement(const ExperimentConfig& config) {
    const std::size_t n = config.n ? config.n : 10;
    const std::size_t datasets = config.reps ? config.reps
                                 : config.paper_scale ? 2000
                                                      : 200;
    const std::size_t max_draws = config.max_draws ? config.max_draws
                                  : config.paper_scale ? 2'000'000
                                                       : 200'000;
    const GrfSpec spec1 = chain_grf(n, 2, config.grf_theta_max);
    const GrfSpec spec2 = step_chain_grf(n, 2, 2, config.grf_theta_max);
    const std::vector<ModelSpec> models = {grf_model(spec1, "chain"),
                                           grf_model(spec2, "step2")};
    const std::vector<double> prior = {0.5, 0.5};

    RandomStream root(config.seed);
    RandomStream data_stream = root.derive(0);
    RandomStream abc_stream = root.derive(1);

    struct Out {
        double exact, abc, se;
        std::size_t c1, c2, draws;
        bool truncated, zero_count;
    };
    std::vector<Out> results(datasets);
    parallel_for(datasets, config.workers, [&](std::size_t d) {
        RandomStream ds = data_stream.derive(d);
        const std::size_t gen = d % 2;
        const auto param = models[gen].prior_sample(ds);
        const Dataset y = models[gen].simulate(param, n, ds);

        AbcConfig abc;
        abc.epsilon = 0.0;
        abc.target_accepts = 1000;
        abc.max_draws = max_draws;
        RandomStream as = abc_stream.derive(d);
        const AbcRun run = abc_model_choice(models, prior, y, abc, as);
        const auto counts = accept_counts(run, 2);
        const auto est = estimate_bayes_factor(counts, 0, 1, prior);
        results[d] = {bf_true(models[0], models[1], y).log_bf,
                      est.log_bf,
                      est.mc_standard_error,
                      counts[0],
                      counts[1],
                      run.total_draws,
                      run.truncated,
                      est.zero_count};
    });

    const Paths paths = experiment_paths(config, "grf");
    std::vector<Row> rows;
    bool truncated = false;
    for (std::size_t d = 0; d < datasets; ++d) {
        const Out& o = results[d];
        // A zero acceptance count leaves the log Bayes factor unbounded; the
        // estimate columns stay blank for such datasets.
        rows.push_back({static_cast<double>(d), static_cast<double>(d % 2), o.exact,
                        o.zero_count ? std::optional<double>() : std::optional<double>(o.abc),
                        o.zero_count ? std::optional<double>() : std::optional<double>(o.se),
                        static_cast<double>(o.c1), static_cast<double>(o.c2),
                        static_cast<double>(o.draws)});
        truncated = truncated || o.truncated;
    }
    write_csv(paths.csv,
              {"dataset", "gen_model", "log_bf_exact", "log_bf_abc", "abc_se",
               "accepts_chain", "accepts_step2", "total_draws"},
              rows);

    const CsvTable csv = read_csv(paths.csv);
    std::vector<double> plot_x, plot_y;
    const std::size_t c_exact = csv.column("log_bf_exact");
    const std::size_t c_abc = csv.column("log_bf_abc");
    for (const auto& row : csv.rows)
        if (row[c_abc]) {
            plot_x.push_back(*row[c_exact]);
            plot_y.push_back(*row[c_abc]);
        }
    write_svg_scatter(paths.svg, plot_x, plot_y,
                      {"GRF pair: exact vs ABC", "exact log BF", "ABC log BF", true});
    write_manifest(paths, config, "grf",
                   {{"n", fmt(n)}, {"datasets", fmt(datasets)},
                    {"max_draws", fmt(max_draws)},
                    {"theta_max", fmt(config.grf_theta_max)}});
    return {paths.csv, paths.svg, paths.manifest, truncated};
}

ExperimentResult exp_poisson_geometric(const ExperimentConfig& config) {
    const std::size_t reps = config.reps ? config.reps : 10'000;
    const std::vector<std::size_t> n_values =
        config.n ? std::vector<std::size_t>{config.n}
                 : std::vector<std::size_t>{20, 50, 100};
    const ModelSpec pois = poisson_model();
    const ModelSpec geom = geometric_model();
    const std::vector<ModelSpec> models = {pois, geom};

    RandomStream root(config.seed);
    struct Out {
        double log_bf_true, log_bf_eta;
    };
    std::vector<Row> rows;
    for (std::size_t law = 0; law < 2; ++law) {
        for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
            const std::size_t n = n_values[ni];
            RandomStream branch = root.derive(law).derive(ni);
            std::vector<Out> results(reps);
            parallel_for(reps, config.workers, [&](std::size_t r) {
                RandomStream sub = branch.derive(r);
                const auto param = models[law].prior_sample(sub);
                const Dataset y = models[law].simulate(param, n, sub);
                results[r] = {bf_true(pois, geom, y).log_bf,
                              log_bf_eta_count(y.sum(), n)};
            });
            for (std::size_t r = 0; r < reps; ++r)
                rows.push_back({static_cast<double>(law), static_cast<double>(n),
                                static_cast<double>(r), results[r].log_bf_true,
                                results[r].log_bf_eta});
        }
    }

    const Paths paths = experiment_paths(config, "poisgeom");
    write_csv(paths.csv, {"data_law", "n", "rep", "log_bf_true", "log_bf_eta"}, rows);

    // Panels at the middle n (the headline sample size), one per data law.
    const CsvTable csv = read_csv(paths.csv);
    const double n_panel = static_cast<double>(n_values[n_values.size() / 2]);
    std::vector<std::vector<double>> xs(2), ys(2);
    const std::size_t c_law = csv.column("data_law");
    const std::size_t c_n = csv.column("n");
    const std::size_t c_true = csv.column("log_bf_true");
    const std::size_t c_eta = csv.column("log_bf_eta");
    for (const auto& row : csv.rows) {
        if (*row[c_n] != n_panel) continue;
        const auto law = static_cast<std::size_t>(*row[c_law]);
        xs[law].push_back(*row[c_true]);
        ys[law].push_back(*row[c_eta]);
    }
    write_svg_scatter_panels(paths.svg, xs, ys, {"Poisson data", "geometric data"},
                             {"log BF: full data (x) vs summary (y)", "log BF",
                              "summary log BF", false});
    std::vector<std::pair<std::string, std::string>> resolved = {{"reps", fmt(reps)}};
    for (std::size_t n : n_values) resolved.emplace_back("n", fmt(n));
    write_manifest(paths, config, "poisgeom", resolved);
    return {paths.csv, paths.svg, paths.manifest, false};
}

ExperimentResult exp_normal_discrepancy(const ExperimentConfig& config) {
    const std::size_t n = config.n ? config.n : 15;
    const std::size_t reps = config.reps ? config.reps : 10'000;
    const auto [m1, m2] = normal_pair(config.sigma1, config.sigma2, config.a);
    const std::vector<ModelSpec> pair = {m1, m2};

    RandomStream root(config.seed);
    std::vector<std::vector<double>> ratios(2);
    for (std::size_t law = 0; law < 2; ++law) {
        RandomStream branch = root.derive(law);
        ratios[law] = discrepancy_samples(pair, law, n, reps, branch, config.workers);
    }

    const Paths paths = experiment_paths(config, "normal");
    std::vector<Row> rows;
    for (std::size_t law = 0; law < 2; ++law)
        for (std::size_t r = 0; r < reps; ++r)
            rows.push_back({static_cast<double>(law), static_cast<double>(r),
                            ratios[law][r]});
    write_csv(paths.csv, {"data_law", "rep", "log_g_ratio"}, rows);

    const CsvTable csv = read_csv(paths.csv);
    std::vector<std::vector<double>> series(2);
    const std::size_t c_law = csv.column("data_law");
    const std::size_t c_ratio = csv.column("log_g_ratio");
    for (const auto& row : csv.rows)
        series[static_cast<std::size_t>(*row[c_law])].push_back(*row[c_ratio]);
    write_svg_histograms(paths.svg, series,
                         {"log g1/g2 discrepancy", {"model-1 data", "model-2 data"}, 40});
    write_manifest(paths, config, "normal",
                   {{"n", fmt(n)}, {"reps", fmt(reps)}, {"sigma1", fmt(config.sigma1)},
                    {"sigma2", fmt(config.sigma2)}, {"a", fmt(config.a)}});
    return {paths.csv, paths.svg, paths.manifest, false};
}

ExperimentResult exp_theorem_limits(const ExperimentConfig& config) {
    const std::vector<std::size_t> n_grid = {100, 1000, 10'000, 100'000};
    RandomStream root(config.seed);
    const LimitStudy derived = theorem1_study(config.theta0, n_grid, CountBfMode::derived);
    const LimitStudy paper =
        theorem1_study(config.theta0, n_grid, CountBfMode::paper_faithful);
    RandomStream t2_stream = root.derive(0);
    const LimitStudy normal =
        theorem2_study(1.0, 2.0, config.a, n_grid, t2_stream);

    const Paths paths = experiment_paths(config, "limits");
    std::vector<Row> rows;
    for (std::size_t i = 0; i < n_grid.size(); ++i)
        rows.push_back({static_cast<double>(n_grid[i]), derived.values[i],
                        paper.values[i], normal.values[i]});
    write_csv(paths.csv,
              {"n", "log_bf_eta_count_derived", "log_bf_eta_count_paper",
               "log_bf_eta_normal"},
              rows);

    const CsvTable csv = read_csv(paths.csv);
    write_svg_curves(paths.svg, csv.column_values("n"),
                     {csv.column_values("log_bf_eta_count_derived"),
                      csv.column_values("log_bf_eta_count_paper"),
                      csv.column_values("log_bf_eta_normal")},
                     {"summary Bayes factor limits", "n", "log BF",
                      {"count pair (derived)", "count pair (printed)", "normal pair"},
                      {derived.derived_constant, derived.paper_constant, 0.0},
                      true});
    write_manifest(paths, config, "limits",
                   {{"theta0", fmt(config.theta0)},
                    {"derived_constant", fmt(derived.derived_constant)},
                    {"paper_constant", fmt(derived.paper_constant)},
                    {"constant_discrepancy_log_theta0", fmt(std::log(config.theta0))}});
    return {paths.csv, paths.svg, paths.manifest, false};
}

ExperimentResult exp_ma_model_choice(const ExperimentConfig& config) {
    const std::size_t n = config.n ? config.n : 100;
    const std::size_t datasets_per_law = config.reps ? config.reps : 10;
    const std::size_t T = config.table_size ? config.table_size
                          : config.paper_scale ? 1'000'000
                                               : 100'000;
    const std::vector<double> quantiles = default_quantiles(config);

    const MaSpec spec1{1, config.ma_innovation_sd};
    const MaSpec spec2{2, config.ma_innovation_sd};
    const std::vector<ModelSpec> models = {ma_model(spec1, 2), ma_model(spec2, 2)};
    const std::vector<double> prior = {0.5, 0.5};

    RandomStream root(config.seed);
    RandomStream table_stream = root.derive(0);
    const ReferenceTable table =
        build_reference_table(models, prior, n, T, table_stream, config.workers);
    DistanceSpec dist;
    dist.scale = table_mad_scale(table);

    const ConcatSummary layout = concat_summary_layout(models);
    RandomStream data_stream = root.derive(1);
    std::vector<Row> rows;
    for (std::size_t law = 0; law < 2; ++law) {
        const std::vector<double> gen_theta =
            law == 0 ? std::vector<double>{config.ma_theta1}
                     : std::vector<double>{config.ma_theta1, config.ma_theta2};
        for (std::size_t d = 0; d < datasets_per_law; ++d) {
            RandomStream ds = data_stream.derive(law).derive(d);
            const Dataset y = models[law].simulate(gen_theta, n, ds);
            const double log_bf_exact = bf_true(models[1], models[0], y).log_bf;
            const SummaryVector observed = concat_summary(models, layout, y);
            const auto sweep = tolerance_sweep(table, observed, dist, quantiles);
            for (const auto& srow : sweep) {
                const auto est =
                    estimate_bayes_factor(srow.per_model_accepts, 1, 0, prior);
                rows.push_back({static_cast<double>(law), static_cast<double>(d),
                                srow.quantile, srow.epsilon,
                                static_cast<double>(srow.per_model_accepts[0]),
                                static_cast<double>(srow.per_model_accepts[1]),
                                est.zero_count ? std::optional<double>()
                                               : std::optional<double>(est.log_bf),
                                est.zero_count
                                    ? std::optional<double>()
                                    : std::optional<double>(est.mc_standard_error),
                                log_bf_exact});
            }
        }
    }

    const Paths paths = experiment_paths(config, "ma");
    write_csv(paths.csv,
              {"data_law", "dataset", "quantile", "epsilon", "accepts_ma1",
               "accepts_ma2", "log_bf21_abc", "abc_se", "log_bf21_exact"},
              rows);

    const CsvTable csv = read_csv(paths.csv);
    const double qmin = quantiles.back();
    std::vector<double> xs, ys;
    const std::size_t c_q = csv.column("quantile");
    const std::size_t c_abc = csv.column("log_bf21_abc");
    const std::size_t c_exact = csv.column("log_bf21_exact");
    for (const auto& row : csv.rows)
        if (*row[c_q] == qmin && row[c_abc]) {
            xs.push_back(*row[c_exact]);
            ys.push_back(*row[c_abc]);
        }
    write_svg_scatter(paths.svg, xs, ys,
                      {"MA(2) vs MA(1): exact vs ABC", "exact log BF(2/1)",
                       "ABC log BF(2/1)", true});
    std::vector<std::pair<std::string, std::string>> resolved = {
        {"n", fmt(n)},       {"datasets_per_law", fmt(datasets_per_law)},
        {"T", fmt(T)},       {"ma_theta1", fmt(config.ma_theta1)},
        {"ma_theta2", fmt(config.ma_theta2)}};
    for (double q : quantiles) resolved.emplace_back("quantile", fmt(q));
    write_manifest(paths, config, "ma", resolved);
    return {paths.csv, paths.svg, paths.manifest, false};
}

double run_factorisation_check(std::uint64_t seed, std::size_t datasets_per_pair) {
    RandomStream root(seed);
    double max_residual = 0.0;

    const ModelSpec pois = poisson_model();
    const ModelSpec geom = geometric_model();
    RandomStream count_stream = root.derive(0);
    for (std::size_t r = 0; r < datasets_per_pair; ++r) {
        RandomStream sub = count_stream.derive(r);
        const ModelSpec& gen = r % 2 == 0 ? pois : geom;
        const auto param = gen.prior_sample(sub);
        const Dataset y = gen.simulate(param, 50, sub);
        const BfComparison cmp = check_factorisation(pois, geom, y);
        max_residual = std::max(max_residual, std::abs(cmp.residual));
    }

    const auto [m1, m2] = normal_pair(0.1, 10.0, 1.0);
    RandomStream normal_stream = root.derive(1);
    for (std::size_t r = 0; r < datasets_per_pair; ++r) {
        RandomStream sub = normal_stream.derive(r);
        const ModelSpec& gen = r % 2 == 0 ? m1 : m2;
        const auto param = gen.prior_sample(sub);
        const Dataset y = gen.simulate(param, 15, sub);
        const BfComparison cmp = check_factorisation(m1, m2, y);
        max_residual = std::max(max_residual, std::abs(cmp.residual));
    }
    return max_residual;
}

}  // namespace abclab
