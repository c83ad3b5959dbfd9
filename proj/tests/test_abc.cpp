#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "abclab/abc.hpp"
#include "abclab/models/count.hpp"
#include "abclab/models/normal_pair.hpp"
#include "abclab/random.hpp"

#include "test_util.hpp"

using namespace abclab;

namespace {

// Bernoulli(theta) with theta ~ U(0,1); summary S = sum.  Small enough to
// enumerate the exact posterior.
ModelSpec bernoulli_toy() {
    ModelSpec m;
    m.name = "bernoulli";
    m.prior_sample = [](RandomStream& s) {
        return std::vector<double>{s.next_double()};
    };
    m.prior_logpdf = [](std::span<const double> t) {
        return (t[0] > 0.0 && t[0] < 1.0) ? 0.0 : -1e300;
    };
    m.simulate = [](std::span<const double> t, std::size_t n, RandomStream& s) {
        Dataset d;
        d.kind = DataKind::integer_valued;
        d.values.resize(n);
        for (auto& v : d.values) v = s.next_double() < t[0] ? 1.0 : 0.0;
        return d;
    };
    m.summary = [](const Dataset& d) { return SummaryVector{d.sum()}; };
    m.summary_names = {"S"};
    m.integer_summary = true;
    return m;
}

// Fair coin, no free parameter; same summary component name as the toy above.
ModelSpec fair_coin() {
    ModelSpec m = bernoulli_toy();
    m.name = "coin";
    m.prior_sample = [](RandomStream&) { return std::vector<double>{}; };
    m.prior_logpdf = [](std::span<const double>) { return 0.0; };
    m.simulate = [](std::span<const double>, std::size_t n, RandomStream& s) {
        Dataset d;
        d.kind = DataKind::integer_valued;
        d.values.resize(n);
        for (auto& v : d.values) v = s.next_double() < 0.5 ? 1.0 : 0.0;
        return d;
    };
    return m;
}

double ks_vs_uniform(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        ks = std::max(ks, std::abs((i + 1) / n - x[i]));
        ks = std::max(ks, std::abs(i / n - x[i]));
    }
    return ks;
}

}  // namespace

TEST_CASE("distance: euclidean and scaled") {
    DistanceSpec plain;
    const std::vector<double> a{1.0, 2.0}, b{4.0, 6.0};
    CHECK(plain(a, b) == doctest::Approx(5.0).epsilon(1e-12));
    DistanceSpec scaled;
    scaled.scale = {3.0, 4.0};
    CHECK(scaled(a, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("config validation") {
    const ModelSpec m = bernoulli_toy();
    RandomStream s(1);
    const SummaryVector obs{2.0};
    AbcConfig both;
    both.epsilon = 0.5;
    both.quantile = 0.1;
    CHECK_THROWS_AS(abc_sample(m, obs, 4, both, s), std::invalid_argument);
    AbcConfig neither;
    CHECK_THROWS_AS(abc_sample(m, obs, 4, neither, s), std::invalid_argument);
    AbcConfig bad_q;
    bad_q.quantile = 1.5;
    CHECK_THROWS_AS(abc_sample(m, obs, 4, bad_q, s), std::invalid_argument);

    // Tolerance 0 on a real-valued summary is rejected.
    const auto [m1, m2] = normal_pair(1.0, 2.0, 1.0);
    AbcConfig zero;
    zero.epsilon = 0.0;
    RandomStream s2(2);
    CHECK_THROWS_AS(abc_sample(m1, SummaryVector{0.0}, 4, zero, s2),
                    std::invalid_argument);
}

TEST_CASE("infinite tolerance returns the prior") {
    const ModelSpec m = bernoulli_toy();
    AbcConfig cfg;
    cfg.epsilon = 1e9;
    cfg.target_accepts = 10'000;
    RandomStream s(42);
    const AbcRun run = abc_sample(m, SummaryVector{3.0}, 4, cfg, s);
    REQUIRE(run.accepted.size() == 10'000);
    std::vector<double> thetas;
    for (const auto& p : run.accepted) thetas.push_back(p.parameter[0]);
    CHECK(ks_vs_uniform(thetas) < 0.02);
    CHECK_FALSE(run.truncated);
}

TEST_CASE("tolerance zero targets the exact partial posterior") {
    // Observed S = 3 of n = 3: posterior theta | S is Beta(4, 1), mean 4/5.
    const ModelSpec m = bernoulli_toy();
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 20'000;
    RandomStream s(43);
    const AbcRun run = abc_sample(m, SummaryVector{3.0}, 3, cfg, s);
    REQUIRE(run.accepted.size() == 20'000);
    std::vector<double> thetas;
    for (const auto& p : run.accepted) thetas.push_back(p.parameter[0]);
    const double sd = std::sqrt(4.0 / (25.0 * 6.0));  // Beta(4,1) sd
    CHECK(std::abs(mean_of(thetas) - 0.8) < 4.0 * sd / std::sqrt(20'000.0));
}

TEST_CASE("poisson conjugate posterior at tolerance zero") {
    const ModelSpec m = poisson_model();
    const std::size_t n = 10;
    const SummaryVector obs{12.0};
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 5000;
    RandomStream s(44);
    const AbcRun run = abc_sample(m, obs, n, cfg, s);
    REQUIRE(run.accepted.size() == 5000);
    std::vector<double> lam;
    for (const auto& p : run.accepted) lam.push_back(p.parameter[0]);
    // lambda | S ~ Gamma(S + 1, n + 1): mean 13/11, sd sqrt(13)/11.
    const double mean = 13.0 / 11.0, sd = std::sqrt(13.0) / 11.0;
    CHECK(std::abs(mean_of(lam) - mean) < 4.0 * sd / std::sqrt(5000.0));
    CHECK(std::abs(std::sqrt(variance_of(lam)) - sd) < 0.02);
}

TEST_CASE("fixed-epsilon sampling reports truncation") {
    const ModelSpec m = bernoulli_toy();
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 1000;
    cfg.max_draws = 50;
    RandomStream s(45);
    const AbcRun run = abc_sample(m, SummaryVector{3.0}, 3, cfg, s);
    CHECK(run.truncated);
    CHECK(run.total_draws == 50);
}

TEST_CASE("keep_data retains the accepted datasets") {
    const ModelSpec m = bernoulli_toy();
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 200;
    cfg.keep_data = true;
    RandomStream s(46);
    const AbcRun run = abc_sample(m, SummaryVector{2.0}, 3, cfg, s);
    REQUIRE(run.accepted_data.size() == run.accepted.size());
    for (const auto& d : run.accepted_data) CHECK(d.sum() == 2.0);
}

TEST_CASE("quantile mode accepts the requested fraction") {
    const ModelSpec m = bernoulli_toy();
    AbcConfig cfg;
    cfg.quantile = 0.1;
    cfg.max_draws = 20'000;
    RandomStream s(47);
    const AbcRun run = abc_sample(m, SummaryVector{3.0}, 4, cfg, s);
    CHECK(run.total_draws == 20'000);
    CHECK(run.accepted.size() >= 2000);       // ceil(qT) plus ties
    CHECK(run.accepted.size() <= 2000 + 19'000);  // ties only at the threshold
    for (const auto& p : run.accepted) CHECK(p.distance <= run.realised_epsilon);
}

TEST_CASE("summary concatenation eliminates duplicate components") {
    const std::vector<ModelSpec> pair{poisson_model(), geometric_model()};
    const ConcatSummary layout = concat_summary_layout(pair);
    CHECK(layout.names == std::vector<std::string>{"S"});
    CHECK(layout.integer_valued);
    const Dataset y{{2.0, 3.0}, DataKind::integer_valued};
    CHECK(concat_summary(pair, layout, y) == SummaryVector{5.0});

    // Distinct names stay separate.
    ModelSpec other = bernoulli_toy();
    other.summary_names = {"T"};
    const std::vector<ModelSpec> mixed{poisson_model(), other};
    const ConcatSummary layout2 = concat_summary_layout(mixed);
    CHECK(layout2.names == std::vector<std::string>{"S", "T"});
}

TEST_CASE("model choice: symmetric pair splits evenly") {
    const std::vector<ModelSpec> models{bernoulli_toy(), bernoulli_toy()};
    const std::vector<double> prior{0.5, 0.5};
    Dataset obs{{1.0, 0.0, 1.0}, DataKind::integer_valued};
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 10'000;
    RandomStream s(48);
    const AbcRun run = abc_model_choice(models, prior, obs, cfg, s);
    const auto counts = accept_counts(run, 2);
    const double f1 = static_cast<double>(counts[0]) / 10'000.0;
    CHECK(std::abs(f1 - 0.5) < 4.0 * std::sqrt(0.25 / 10'000.0));
}

TEST_CASE("model choice: posterior probability matches enumeration") {
    // Observed S = 3 of n = 3.  P(S=3 | toy) = 1/4, P(S=3 | coin) = 1/8;
    // equal priors give posterior 2/3 vs 1/3.
    const std::vector<ModelSpec> models{bernoulli_toy(), fair_coin()};
    const std::vector<double> prior{0.5, 0.5};
    Dataset obs{{1.0, 1.0, 1.0}, DataKind::integer_valued};
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 20'000;
    RandomStream s(49);
    const AbcRun run = abc_model_choice(models, prior, obs, cfg, s);
    const auto counts = accept_counts(run, 2);
    const auto est = estimate_posterior_probs(counts, prior);
    CHECK(std::abs(est.probs[0] - 2.0 / 3.0) < 4.0 * est.standard_errors[0]);
    const auto bf = estimate_bayes_factor(counts, 0, 1, prior);
    CHECK(std::abs(bf.log_bf - std::log(2.0)) < 4.0 * bf.mc_standard_error);
}

TEST_CASE("model choice at infinite tolerance recovers the proposal prior") {
    const std::vector<ModelSpec> models{bernoulli_toy(), fair_coin()};
    const std::vector<double> prior{0.9, 0.1};
    Dataset obs{{1.0, 0.0, 0.0}, DataKind::integer_valued};
    AbcConfig cfg;
    cfg.epsilon = 1e9;
    cfg.target_accepts = 20'000;
    RandomStream s(50);
    const AbcRun run = abc_model_choice(models, prior, obs, cfg, s);
    const auto counts = accept_counts(run, 2);
    const double f1 = static_cast<double>(counts[0]) / 20'000.0;
    CHECK(std::abs(f1 - 0.9) < 4.0 * std::sqrt(0.09 / 20'000.0));
}

TEST_CASE("reference table is independent of the worker count") {
    const std::vector<ModelSpec> models{poisson_model(), geometric_model()};
    const std::vector<double> prior{0.5, 0.5};
    RandomStream s1(77), s2(77), s3(77);
    const ReferenceTable t1 = build_reference_table(models, prior, 20, 500, s1, 1);
    const ReferenceTable t2 = build_reference_table(models, prior, 20, 500, s2, 4);
    const ReferenceTable t3 = build_reference_table(models, prior, 20, 500, s3, 7);
    REQUIRE(t1.rows.size() == 500);
    for (std::size_t r = 0; r < 500; ++r) {
        CHECK(t1.rows[r].model_index == t2.rows[r].model_index);
        CHECK(t1.rows[r].parameter == t2.rows[r].parameter);
        CHECK(t1.rows[r].summary == t2.rows[r].summary);
        CHECK(t1.rows[r].summary == t3.rows[r].summary);
    }
    // Model frequencies behave like Binomial(T, 1/2).
    std::size_t m0 = 0;
    for (const auto& row : t1.rows) m0 += row.model_index == 0;
    CHECK(std::abs(static_cast<double>(m0) / 500.0 - 0.5) <
          4.0 * std::sqrt(0.25 / 500.0));
}

TEST_CASE("tolerance sweep: tie rule and monotone counts") {
    ReferenceTable t;
    t.model_count = 2;
    t.summary_names = {"S"};
    for (double s : {1.0, 2.0, 3.0, 4.0}) {
        TableRow row;
        row.model_index = s <= 2.0 ? 0 : 1;
        row.summary = {s};
        t.rows.push_back(row);
    }
    const SummaryVector observed{0.0};
    const auto rows = tolerance_sweep(t, observed, DistanceSpec{}, {0.5, 0.25});
    REQUIRE(rows.size() == 2);
    // k = ceil(0.5 * 4) = 2 -> epsilon is the 2nd smallest distance.
    CHECK(rows[0].epsilon == doctest::Approx(2.0));
    CHECK(rows[0].total_accepts == 2);
    CHECK(rows[0].per_model_accepts == std::vector<std::size_t>{2, 0});
    CHECK(rows[1].epsilon == doctest::Approx(1.0));
    CHECK(rows[1].total_accepts == 1);

    // Ties at the threshold are all accepted.
    ReferenceTable tied;
    tied.model_count = 1;
    tied.summary_names = {"S"};
    for (double s : {1.0, 1.0, 1.0, 5.0}) {
        TableRow row;
        row.summary = {s};
        tied.rows.push_back(row);
    }
    const auto tied_rows = tolerance_sweep(tied, observed, DistanceSpec{}, {0.25});
    CHECK(tied_rows[0].total_accepts == 3);

    // Quantile list must be strictly decreasing and inside (0, 1].
    CHECK_THROWS_AS(tolerance_sweep(t, observed, DistanceSpec{}, {0.5, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tolerance_sweep(t, observed, DistanceSpec{}, {1.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tolerance_sweep(t, observed, DistanceSpec{}, {0.1, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("estimator formulas") {
    const std::vector<std::size_t> counts{75, 25};
    const std::vector<double> prior{0.5, 0.5};
    const auto probs = estimate_posterior_probs(counts, prior);
    CHECK(probs.probs[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(probs.probs[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(probs.standard_errors[0] ==
          doctest::Approx(std::sqrt(0.75 * 0.25 / 100.0)).epsilon(1e-12));
    CHECK_FALSE(probs.zero_count);

    // Reweighting to a different target prior.
    const auto rw = estimate_posterior_probs(counts, {0.5, 0.5}, {0.2, 0.8});
    const double w0 = 75.0 * (0.2 / 0.5), w1 = 25.0 * (0.8 / 0.5);
    CHECK(rw.probs[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-12));

    const auto zero = estimate_posterior_probs({0, 50}, prior);
    CHECK(zero.zero_count);
    CHECK(zero.probs[0] == 0.0);

    const auto bf = estimate_bayes_factor({200, 100}, 0, 1, prior);
    CHECK(bf.log_bf == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(bf.mc_standard_error ==
          doctest::Approx(std::sqrt(1.0 / 200.0 + 1.0 / 100.0 - 2.0 / 300.0))
              .epsilon(1e-12));
    CHECK(bf.provenance == Provenance::abc);

    const auto inf_bf = estimate_bayes_factor({10, 0}, 0, 1, prior);
    CHECK(inf_bf.zero_count);
    CHECK(std::isinf(inf_bf.log_bf));
    CHECK(inf_bf.log_bf > 0.0);

    // Unequal proposal prior enters the estimate.
    const auto skew = estimate_bayes_factor({200, 100}, 0, 1, {0.8, 0.2});
    CHECK(skew.log_bf ==
          doctest::Approx(std::log(0.2 / 0.8) + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mad scale: zero spread falls back to one") {
    ReferenceTable t;
    t.model_count = 1;
    t.summary_names = {"a", "b"};
    for (double v : {1.0, 2.0, 3.0, 4.0, 100.0}) {
        TableRow row;
        row.summary = {v, 7.0};
        t.rows.push_back(row);
    }
    const auto scale = table_mad_scale(t);
    REQUIRE(scale.size() == 2);
    CHECK(scale[0] == doctest::Approx(1.0));  // |x - 3| medians to 1
    CHECK(scale[1] == doctest::Approx(1.0));  // constant column
}

TEST_CASE("abc runs are identical across repeated invocations") {
    const ModelSpec m = poisson_model();
    AbcConfig cfg;
    cfg.epsilon = 0.0;
    cfg.target_accepts = 300;
    RandomStream s1(90), s2(90);
    const AbcRun a = abc_sample(m, SummaryVector{12.0}, 10, cfg, s1);
    const AbcRun b = abc_sample(m, SummaryVector{12.0}, 10, cfg, s2);
    REQUIRE(a.accepted.size() == b.accepted.size());
    for (std::size_t i = 0; i < a.accepted.size(); ++i)
        CHECK(a.accepted[i].parameter == b.accepted[i].parameter);
    CHECK(a.total_draws == b.total_draws);
}
