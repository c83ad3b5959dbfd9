#include <doctest.h>

#include <cmath>
#include <vector>

#include "abclab/models/ma.hpp"
#include "abclab/quadrature.hpp"
#include "abclab/random.hpp"

#include "test_util.hpp"

using namespace abclab;

namespace {

// Dense-matrix Gaussian log-likelihood oracle: full covariance, textbook
// Cholesky, no banding.
double dense_ma_loglik(const MaSpec& spec, std::span<const double> theta,
                       const Dataset& y) {
    const std::size_t n = y.n();
    std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> C(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            C[i][j] = ma_autocovariance(spec, theta,
                                        static_cast<int>(i > j ? i - j : j - i));
    double log_det = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = C[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                L[i][i] = std::sqrt(s);
                log_det += 2.0 * std::log(L[i][i]);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = y.values[i];
        for (std::size_t k = 0; k < i; ++k) s -= L[i][k] * v[k];
        v[i] = s / L[i][i];
    }
    double quad = 0.0;
    for (double x : v) quad += x * x;
    return -0.5 * (n * std::log(2.0 * M_PI) + log_det + quad);
}

}  // namespace

TEST_CASE("theoretical autocovariances") {
    const MaSpec ma1{1, 1.0};
    const std::vector<double> t1{0.5};
    CHECK(ma_autocovariance(ma1, t1, 0) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(ma_autocovariance(ma1, t1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ma_autocovariance(ma1, t1, 2) == doctest::Approx(0.0).epsilon(1e-12));

    const MaSpec ma2{2, 1.0};
    const std::vector<double> t2{0.5, 0.7};
    CHECK(ma_autocovariance(ma2, t2, 0) == doctest::Approx(1.74).epsilon(1e-12));
    CHECK(ma_autocovariance(ma2, t2, 1) == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(ma_autocovariance(ma2, t2, 2) == doctest::Approx(0.7).epsilon(1e-12));

    // Innovation sd scales every lag quadratically.
    const MaSpec scaled{1, 2.0};
    CHECK(ma_autocovariance(scaled, t1, 0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("invertibility region") {
    const MaSpec ma1{1, 1.0};
    CHECK(ma_invertible(ma1, std::vector<double>{0.99}));
    CHECK_FALSE(ma_invertible(ma1, std::vector<double>{1.0}));
    CHECK_FALSE(ma_invertible(ma1, std::vector<double>{-1.2}));

    const MaSpec ma2{2, 1.0};
    CHECK(ma_invertible(ma2, std::vector<double>{0.5, 0.7}));
    CHECK(ma_invertible(ma2, std::vector<double>{0.0, -0.9}));
    CHECK(ma_invertible(ma2, std::vector<double>{1.5, 0.7}));         // wide triangle
    CHECK_FALSE(ma_invertible(ma2, std::vector<double>{2.0, 0.7}));   // t1 - t2 >= 1
    CHECK_FALSE(ma_invertible(ma2, std::vector<double>{-0.5, -0.6})); // t1 + t2 <= -1
    CHECK_FALSE(ma_invertible(ma2, std::vector<double>{0.0, 1.1}));
}

TEST_CASE("prior draws land in the invertibility region") {
    for (int order : {1, 2}) {
        const MaSpec spec{order, 1.0};
        const ModelSpec m = ma_model(spec);
        RandomStream s(3000 + order);
        for (int i = 0; i < 2000; ++i) {
            const auto theta = m.prior_sample(s);
            REQUIRE(theta.size() == static_cast<std::size_t>(order));
            CHECK(ma_invertible(spec, theta));
        }
    }
}

TEST_CASE("empirical autocovariances track the theory") {
    const MaSpec spec{1, 1.0};
    const ModelSpec m = ma_model(spec);
    const std::vector<double> theta{0.5};
    const std::size_t reps = 4000, n = 500;
    std::vector<double> g0(reps), g1(reps), g2(reps);
    RandomStream root(310);
    for (std::size_t r = 0; r < reps; ++r) {
        RandomStream sub = root.derive(r);
        const Dataset y = m.simulate(theta, n, sub);
        const SummaryVector acov = autocovariances(y, 2);
        g0[r] = acov[0];
        g1[r] = acov[1];
        g2[r] = acov[2];
    }
    // 1/n-normalised centred estimates; generous CLT bands.
    CHECK(std::abs(mean_of(g0) - 1.25) < 0.01);
    CHECK(std::abs(mean_of(g1) - 0.5) < 0.01);
    CHECK(std::abs(mean_of(g2) - 0.0) < 0.01);
}

TEST_CASE("banded likelihood equals the dense oracle") {
    RandomStream root(320);
    for (int order : {1, 2}) {
        const MaSpec spec{order, 1.3};
        const ModelSpec m = ma_model(spec);
        for (std::size_t n : {1, 2, 3, 10, 60}) {
            RandomStream sub = root.derive(order * 1000 + n);
            const auto theta = m.prior_sample(sub);
            const Dataset y = m.simulate(theta, n, sub);
            const double banded = ma_log_likelihood(spec, theta, y);
            const double dense = dense_ma_loglik(spec, theta, y);
            CHECK(banded == doctest::Approx(dense).epsilon(1e-10));
        }
    }
}

TEST_CASE("theta = 0 reduces to iid gaussian") {
    const MaSpec spec{1, 1.0};
    const Dataset y{{0.4, -1.0, 0.2, 1.7}, DataKind::real_valued};
    const std::vector<double> theta{0.0};
    double iid = 0.0;
    for (double v : y.values)
        iid += -0.5 * std::log(2.0 * M_PI) - 0.5 * v * v;
    CHECK(ma_log_likelihood(spec, theta, y) == doctest::Approx(iid).epsilon(1e-12));
}

TEST_CASE("ma(1) evidence hook equals adaptive quadrature of the likelihood") {
    const MaSpec spec{1, 1.0};
    const ModelSpec m = ma_model(spec);
    RandomStream s(330);
    const Dataset y = m.simulate(std::vector<double>{0.5}, 30, s);
    const double direct = integrate_log(
        [&](double t) {
            return ma_log_likelihood(spec, std::vector<double>{t}, y) - std::log(2.0);
        },
        -1.0, 1.0, 1e-9);
    CHECK(m.log_evidence(y) == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("ma(2) evidence hook agrees with nested adaptive quadrature") {
    const MaSpec spec{2, 1.0};
    const ModelSpec m = ma_model(spec);
    RandomStream s(331);
    const Dataset y = m.simulate(std::vector<double>{0.5, 0.7}, 25, s);
    const double direct = integrate_log(
        [&](double t2) {
            return integrate_log(
                       [&](double t1) {
                           return ma_log_likelihood(spec, std::vector<double>{t1, t2},
                                                    y);
                       },
                       -1.0 - t2, 1.0 + t2, 1e-8) -
                   std::log(4.0);
        },
        -1.0, 1.0, 1e-7);
    CHECK(m.log_evidence(y) == doctest::Approx(direct).epsilon(1e-4));
}

TEST_CASE("summary lags follow summary_max_lag") {
    const ModelSpec m = ma_model(MaSpec{1, 1.0}, 2);
    const Dataset y{{1.0, 2.0, 3.0, 4.0}, DataKind::real_valued};
    CHECK(m.summary(y).size() == 3);  // lags 0, 1, 2
    CHECK(m.summary_names.size() == 3);
    const ModelSpec d = ma_model(MaSpec{2, 1.0});
    CHECK(d.summary(y).size() == 3);  // defaults to the order
}
