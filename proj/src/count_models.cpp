#include "abclab/models/count.hpp"

#include <cmath>
#include <stdexcept>

#include "abclab/logspace.hpp"

namespace abclab {

namespace {

double dataset_sum_log_factorials(const Dataset& y) {
    double t = 0.0;
    for (double v : y.values) t += log_factorial(v);
    return t;
}

SummaryVector sum_summary(const Dataset& y) { return {y.sum()}; }

}  // namespace

ModelSpec poisson_model() {
    ModelSpec m;
    m.name = "poisson";
    m.summary_names = {"S"};
    m.integer_summary = true;
    m.prior_sample = [](RandomStream& s) -> std::vector<double> {
        return {sample_exponential(s, 1.0)};
    };
    m.prior_logpdf = [](std::span<const double> p) {
        return p[0] > 0.0 ? -p[0] : kNegInf;
    };
    m.simulate = [](std::span<const double> p, std::size_t n, RandomStream& s) {
        Dataset d;
        d.kind = DataKind::integer_valued;
        d.values.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            d.values.push_back(static_cast<double>(sample_poisson(s, p[0])));
        return d;
    };
    m.summary = sum_summary;
    // int_0^inf Pois(S | n*lambda) e^-lambda dlambda = n^S / (n+1)^(S+1)
    m.log_marginal_summary = [](const SummaryVector& s, std::size_t n) {
        const double S = s[0];
        const double nn = static_cast<double>(n);
        return S * std::log(nn) - (S + 1.0) * std::log(nn + 1.0);
    };
    // Conditional of y given S is multinomial M(S, 1/n, ..., 1/n).
    m.log_g_factor = [](const Dataset& y) {
        const double S = y.sum();
        const double nn = static_cast<double>(y.n());
        return log_factorial(S) - S * std::log(nn) - dataset_sum_log_factorials(y);
    };
    m.log_evidence = [](const Dataset& y) {
        const double S = y.sum();
        const double nn = static_cast<double>(y.n());
        return log_factorial(S) - (S + 1.0) * std::log(nn + 1.0) -
               dataset_sum_log_factorials(y);
    };
    return m;
}

ModelSpec geometric_model() {
    ModelSpec m;
    m.name = "geometric";
    m.summary_names = {"S"};
    m.integer_summary = true;
    m.prior_sample = [](RandomStream& s) -> std::vector<double> {
        return {sample_uniform(s, 0.0, 1.0)};
    };
    m.prior_logpdf = [](std::span<const double> p) {
        return (p[0] > 0.0 && p[0] < 1.0) ? 0.0 : kNegInf;
    };
    m.simulate = [](std::span<const double> p, std::size_t n, RandomStream& s) {
        Dataset d;
        d.kind = DataKind::integer_valued;
        d.values.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            d.values.push_back(static_cast<double>(sample_geometric(s, p[0])));
        return d;
    };
    m.summary = sum_summary;
    // NegBin(n,p) marginalised over p ~ U(0,1): n / ((S+n+1)(S+n))
    m.log_marginal_summary = [](const SummaryVector& s, std::size_t n) {
        const double S = s[0];
        const double nn = static_cast<double>(n);
        return std::log(nn) - std::log(S + nn + 1.0) - std::log(S + nn);
    };
    // Conditional of y given S is uniform over the compositions of S.
    m.log_g_factor = [](const Dataset& y) {
        const double S = y.sum();
        const double nn = static_cast<double>(y.n());
        return log_factorial(S) + std::lgamma(nn) - std::lgamma(nn + S);
    };
    m.log_evidence = [](const Dataset& y) {
        const double S = y.sum();
        const double nn = static_cast<double>(y.n());
        return log_beta(nn + 1.0, S + 1.0);
    };
    return m;
}

SummaryVector cross_model_summary(CrossPair pair, const Dataset& y) {
    switch (pair) {
        case CrossPair::poisson_geometric: {
            double log_prod_fact = 0.0;
            for (double v : y.values) log_prod_fact += log_factorial(v);
            return {y.sum(), log_prod_fact};
        }
        case CrossPair::normal_pair: {
            const double ybar = y.mean();
            double s2 = 0.0;
            for (double v : y.values) s2 += (v - ybar) * (v - ybar);
            return {ybar, s2};
        }
    }
    throw std::domain_error("cross_model_summary: unknown pair");
}

ModelSpec with_cross_summary(ModelSpec model, CrossPair pair) {
    model.summary = [pair](const Dataset& y) { return cross_model_summary(pair, y); };
    switch (pair) {
        case CrossPair::poisson_geometric:
            model.summary_names = {"S", "sum_log_yfact"};
            model.integer_summary = false;  // second component is real-valued
            break;
        case CrossPair::normal_pair:
            model.summary_names = {"ybar", "S2"};
            model.integer_summary = false;
            break;
    }
    model.log_marginal_summary = nullptr;
    model.log_g_factor = nullptr;
    return model;
}

}  // namespace abclab
