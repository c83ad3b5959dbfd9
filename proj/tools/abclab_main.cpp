#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abclab/csv.hpp"
#include "abclab/experiments.hpp"
#include "abclab/models/count.hpp"
#include "abclab/models/ma.hpp"
#include "abclab/models/normal_pair.hpp"
#include "abclab/oracle.hpp"

namespace {

using namespace abclab;

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& config) {
    cmd->add_option("--seed", config.seed, "Root seed (determines the run exactly)")
        ->required();
    cmd->add_option("--out", config.out_dir, "Output directory")
        ->capture_default_str();
    cmd->add_option("--workers", config.workers, "Worker threads")
        ->capture_default_str();
    cmd->add_flag("--paper-scale", config.paper_scale,
                  "Run at the source figures' full scale");
    cmd->add_option("--n", config.n, "Sample size (0 = experiment default)");
    cmd->add_option("--reps", config.reps, "Replications / datasets (0 = default)");
    cmd->add_option("--table-size", config.table_size, "Reference-table rows");
    cmd->add_option("--max-draws", config.max_draws, "Proposal budget per ABC run");
    cmd->add_option("--quantiles", config.quantiles, "Acceptance quantiles, decreasing");
    cmd->add_option("--sigma1", config.sigma1, "Model-1 sd (normal pair)")
        ->capture_default_str();
    cmd->add_option("--sigma2", config.sigma2, "Model-2 sd (normal pair)")
        ->capture_default_str();
    cmd->add_option("--a", config.a, "Prior sd for the location parameter")
        ->capture_default_str();
    cmd->add_option("--theta0", config.theta0, "Data-generating mean (limit study)")
        ->capture_default_str();
    cmd->add_option("--grf-theta-max", config.grf_theta_max, "GRF prior upper bound")
        ->capture_default_str();
    cmd->add_option("--ma-theta1", config.ma_theta1, "MA data-generating theta1")
        ->capture_default_str();
    cmd->add_option("--ma-theta2", config.ma_theta2, "MA data-generating theta2")
        ->capture_default_str();
    cmd->set_config("--config", "", "Flat key=value configuration file");
}

int finish(const ExperimentResult& result) {
    std::cout << "csv: " << result.csv_path << "\n"
              << "svg: " << result.svg_path << "\n"
              << "manifest: " << result.manifest_path << "\n";
    if (result.truncated) {
        std::cerr << "warning: at least one ABC run exhausted its draw budget\n";
        return 3;
    }
    return 0;
}

std::vector<ModelSpec> named_pair(const std::string& pair) {
    if (pair == "count") return {poisson_model(), geometric_model()};
    if (pair == "count-cross")
        return {with_cross_summary(poisson_model(), CrossPair::poisson_geometric),
                with_cross_summary(geometric_model(), CrossPair::poisson_geometric)};
    if (pair == "normal") {
        auto [m1, m2] = normal_pair(0.1, 10.0, 1.0);
        return {m1, m2};
    }
    if (pair == "ma") return {ma_model(MaSpec{1, 1.0}, 2), ma_model(MaSpec{2, 1.0}, 2)};
    throw CLI::ValidationError("--pair", "unknown model pair '" + pair + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abclab: likelihood-free Bayesian model-choice laboratory"};
    app.require_subcommand(1);

    ExperimentConfig config;
    auto* grf = app.add_subcommand("grf", "Exact vs ABC Bayes factors for a GRF pair");
    auto* poisgeom =
        app.add_subcommand("poisgeom", "Full-data vs summary BF, Poisson/geometric");
    auto* normal =
        app.add_subcommand("normal", "Log discrepancy histograms, normal pair");
    auto* limits = app.add_subcommand("limits", "Large-n limit studies of the summary BF");
    auto* ma = app.add_subcommand("ma", "MA(1) vs MA(2) ABC model choice");
    for (auto* cmd : {grf, poisgeom, normal, limits, ma})
        add_experiment_flags(cmd, config);

    auto* table = app.add_subcommand("table", "Build and save a reference table");
    std::string table_pair = "count";
    std::string table_out = "table.csv";
    std::uint64_t table_seed = 0;
    std::size_t table_n = 50, table_T = 10000, table_workers = 1;
    int data_model = 0;
    table->add_option("--pair", table_pair, "count | count-cross | normal | ma")
        ->capture_default_str();
    table->add_option("--seed", table_seed, "Root seed")->required();
    table->add_option("--n", table_n, "Sample size")->capture_default_str();
    table->add_option("--T", table_T, "Table rows")->capture_default_str();
    table->add_option("--out", table_out, "Output CSV path")->capture_default_str();
    table->add_option("--workers", table_workers, "Worker threads")
        ->capture_default_str();
    table->add_option("--data-model", data_model,
                      "Model index generating the observed dataset")
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Tolerance sweep over a saved table");
    std::string sweep_table_path;
    std::vector<double> sweep_observed;
    std::vector<double> sweep_quantiles = {0.1, 0.01, 0.001};
    bool sweep_mad = false;
    sweep->add_option("--table", sweep_table_path, "Reference-table CSV")->required();
    sweep->add_option("--observed", sweep_observed, "Observed summary components")
        ->required();
    sweep->add_option("--quantiles", sweep_quantiles, "Acceptance quantiles, decreasing")
        ->capture_default_str();
    sweep->add_flag("--mad-scale", sweep_mad,
                    "Scale coordinates by the table's median absolute deviation");

    auto* check = app.add_subcommand("check", "Run the factorisation-identity suite");
    std::uint64_t check_seed = 1;
    std::size_t check_datasets = 100;
    check->add_option("--seed", check_seed, "Root seed")->capture_default_str();
    check->add_option("--datasets", check_datasets, "Datasets per model pair")
        ->capture_default_str();

    try {
        app.parse(argc, argv);

        if (*grf) return finish(exp_grf_agreement(config));
        if (*poisgeom) return finish(exp_poisson_geometric(config));
        if (*normal) return finish(exp_normal_discrepancy(config));
        if (*limits) return finish(exp_theorem_limits(config));
        if (*ma) return finish(exp_ma_model_choice(config));

        if (*table) {
            const auto models = named_pair(table_pair);
            RandomStream root(table_seed);
            const std::vector<double> prior(models.size(), 1.0 / models.size());
            RandomStream table_stream = root.derive(0);
            const ReferenceTable t = build_reference_table(
                models, prior, table_n, table_T, table_stream, table_workers);
            RandomStream data_stream = root.derive(1);
            const auto param = models[data_model].prior_sample(data_stream);
            const Dataset y = models[data_model].simulate(param, table_n, data_stream);
            const ConcatSummary layout = concat_summary_layout(models);
            const SummaryVector observed = concat_summary(models, layout, y);
            save_reference_table(table_out, t, observed, DistanceSpec{});
            std::cout << "table: " << table_out << " (" << t.rows.size() << " rows)\n";
            std::cout << "observed summary:";
            for (double s : observed) std::cout << " " << format_double(s);
            std::cout << "\n";
            return 0;
        }

        if (*sweep) {
            const ReferenceTable t = load_reference_table(sweep_table_path);
            DistanceSpec dist;
            if (sweep_mad) dist.scale = table_mad_scale(t);
            const auto rows = tolerance_sweep(t, sweep_observed, dist, sweep_quantiles);
            std::vector<double> prior(t.model_count, 1.0 / t.model_count);
            std::cout << "quantile,epsilon,accepts,log_bf_12,se\n";
            for (const auto& row : rows) {
                std::cout << format_double(row.quantile) << ","
                          << format_double(row.epsilon) << ",";
                for (std::size_t m = 0; m < row.per_model_accepts.size(); ++m)
                    std::cout << (m ? "|" : "") << row.per_model_accepts[m];
                if (t.model_count >= 2 && row.total_accepts > 0) {
                    const auto est =
                        estimate_bayes_factor(row.per_model_accepts, 0, 1, prior);
                    if (est.zero_count)
                        std::cout << ",inf,inf";
                    else
                        std::cout << "," << format_double(est.log_bf) << ","
                                  << format_double(est.mc_standard_error);
                } else {
                    std::cout << ",,";
                }
                std::cout << "\n";
            }
            return 0;
        }

        if (*check) {
            const double residual = run_factorisation_check(check_seed, check_datasets);
            std::cout << "max factorisation residual: " << format_double(residual)
                      << "\n";
            return residual < 1e-8 ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
