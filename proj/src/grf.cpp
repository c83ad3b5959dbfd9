#include "abclab/models/grf.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

#include "abclab/logspace.hpp"
#include "abclab/quadrature.hpp"

namespace abclab {

namespace {

constexpr double kEnumBudget = 1048576.0;  // 2^20 configurations

void validate(const GrfSpec& spec) {
    if (spec.state_count < 2) throw std::invalid_argument("grf: state_count must be >= 2");
    if (spec.n_sites < 1) throw std::invalid_argument("grf: n_sites must be >= 1");
    if (!(spec.theta_max > 0.0)) throw std::invalid_argument("grf: theta_max must be > 0");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : spec.edges) {
        if (a == b) throw std::invalid_argument("grf: self edge");
        if (a < 0 || b < 0 || a >= static_cast<int>(spec.n_sites) ||
            b >= static_cast<int>(spec.n_sites))
            throw std::invalid_argument("grf: edge endpoint out of range");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) throw std::invalid_argument("grf: duplicate edge");
    }
}

bool enumeration_feasible(const GrfSpec& spec) {
    return std::pow(static_cast<double>(spec.state_count),
                    static_cast<double>(spec.n_sites)) <= kEnumBudget;
}

struct Forest {
    bool acyclic = false;
    std::vector<std::vector<int>> adj;
    std::vector<int> order;    // BFS order, parents before children
    std::vector<int> parent;   // -1 for component roots
};

Forest build_forest(const GrfSpec& spec) {
    const int n = static_cast<int>(spec.n_sites);
    Forest f;
    f.adj.resize(n);
    // union-find cycle check
    std::vector<int> uf(n);
    for (int i = 0; i < n; ++i) uf[i] = i;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    f.acyclic = true;
    for (auto [a, b] : spec.edges) {
        f.adj[a].push_back(b);
        f.adj[b].push_back(a);
        int ra = find(a), rb = find(b);
        if (ra == rb) f.acyclic = false;
        else uf[ra] = rb;
    }
    if (!f.acyclic) return f;
    f.parent.assign(n, -2);
    f.order.reserve(n);
    for (int root = 0; root < n; ++root) {
        if (f.parent[root] != -2) continue;
        f.parent[root] = -1;
        std::vector<int> queue = {root};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int u = queue[q];
            f.order.push_back(u);
            for (int v : f.adj[u])
                if (f.parent[v] == -2) {
                    f.parent[v] = u;
                    queue.push_back(v);
                }
        }
    }
    return f;
}

}  // namespace

GrfSpec chain_grf(std::size_t n, int state_count, double theta_max) {
    return step_chain_grf(n, 1, state_count, theta_max);
}

GrfSpec step_chain_grf(std::size_t n, int step, int state_count, double theta_max) {
    GrfSpec spec;
    spec.state_count = state_count;
    spec.n_sites = n;
    spec.theta_max = theta_max;
    for (std::size_t i = 0; i + step < n; ++i)
        spec.edges.emplace_back(static_cast<int>(i), static_cast<int>(i + step));
    validate(spec);
    return spec;
}

GrfSpec lattice_grf(std::size_t rows, std::size_t cols, int state_count, double theta_max) {
    GrfSpec spec;
    spec.state_count = state_count;
    spec.n_sites = rows * cols;
    spec.theta_max = theta_max;
    auto at = [cols](std::size_t r, std::size_t c) {
        return static_cast<int>(r * cols + c);
    };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) spec.edges.emplace_back(at(r, c), at(r, c + 1));
            if (r + 1 < rows) spec.edges.emplace_back(at(r, c), at(r + 1, c));
        }
    validate(spec);
    return spec;
}

int monochrome_edge_count(const GrfSpec& spec, std::span<const int> states) {
    int count = 0;
    for (auto [a, b] : spec.edges)
        if (states[a] == states[b]) ++count;
    return count;
}

int monochrome_edge_count(const GrfSpec& spec, const Dataset& y) {
    std::vector<int> states(y.values.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        states[i] = static_cast<int>(y.values[i]);
    return monochrome_edge_count(spec, states);
}

std::vector<double> grf_eta_histogram(const GrfSpec& spec) {
    validate(spec);
    if (!enumeration_feasible(spec))
        throw std::invalid_argument("grf: enumeration budget exceeded");
    std::vector<double> hist(spec.edges.size() + 1, 0.0);
    std::vector<int> states(spec.n_sites, 0);
    const int k = spec.state_count;
    while (true) {
        hist[monochrome_edge_count(spec, states)] += 1.0;
        std::size_t pos = 0;
        while (pos < states.size() && ++states[pos] == k) states[pos++] = 0;
        if (pos == states.size()) break;
    }
    return hist;
}

double grf_log_z(const std::vector<double>& eta_histogram, double theta) {
    std::vector<double> terms;
    terms.reserve(eta_histogram.size());
    for (std::size_t j = 0; j < eta_histogram.size(); ++j)
        terms.push_back(eta_histogram[j] > 0.0
                            ? std::log(eta_histogram[j]) + theta * static_cast<double>(j)
                            : kNegInf);
    return log_sum_exp(terms);
}

std::vector<int> grf_sample_exact(const GrfSpec& spec, double theta, RandomStream& stream) {
    validate(spec);
    const Forest f = build_forest(spec);
    if (!f.acyclic)
        throw std::invalid_argument("grf_sample_exact: structure has cycles");
    const int n = static_cast<int>(spec.n_sites);
    const int k = spec.state_count;
    const double boost = std::exp(theta) - 1.0;
    // Upward pass: w[u][x] = product over children c of
    //   (sum_c w[c] + boost * w[c][x]); normalised per node.
    std::vector<std::vector<double>> w(n, std::vector<double>(k, 1.0));
    for (auto it = f.order.rbegin(); it != f.order.rend(); ++it) {
        const int u = *it;
        const int p = f.parent[u];
        if (p < 0) continue;
        double total = 0.0;
        for (double v : w[u]) total += v;
        double mx = 0.0;
        std::vector<double> msg(k);
        for (int x = 0; x < k; ++x) {
            msg[x] = total + boost * w[u][x];
            mx = std::max(mx, msg[x]);
        }
        for (int x = 0; x < k; ++x) w[p][x] *= msg[x] / mx;
    }
    // Downward pass: sample root from w, children conditionally on parents.
    std::vector<int> states(n, -1);
    std::vector<double> probs(k);
    for (int u : f.order) {
        const int p = f.parent[u];
        if (p < 0) {
            states[u] = static_cast<int>(sample_categorical(stream, w[u]));
        } else {
            for (int x = 0; x < k; ++x)
                probs[x] = w[u][x] * (x == states[p] ? std::exp(theta) : 1.0);
            states[u] = static_cast<int>(sample_categorical(stream, probs));
        }
    }
    return states;
}

ModelSpec grf_model(const GrfSpec& spec, const std::string& name) {
    validate(spec);
    ModelSpec m;
    m.name = name;
    m.summary_names = {"eta_" + name};
    m.integer_summary = true;
    const GrfSpec s = spec;
    m.prior_sample = [s](RandomStream& st) -> std::vector<double> {
        return {sample_uniform(st, 0.0, s.theta_max)};
    };
    m.prior_logpdf = [s](std::span<const double> p) {
        return (p[0] >= 0.0 && p[0] <= s.theta_max) ? -std::log(s.theta_max) : kNegInf;
    };
    const bool acyclic = build_forest(s).acyclic;
    m.simulate = [s, acyclic](std::span<const double> p, std::size_t /*n*/, RandomStream& st) {
        Dataset d;
        d.kind = DataKind::integer_valued;
        std::vector<int> states;
        if (acyclic) {
            states = grf_sample_exact(s, p[0], st);
        } else {
            // single-site Gibbs sweeps from a uniform random start
            const int n = static_cast<int>(s.n_sites);
            const int k = s.state_count;
            states.resize(n);
            std::vector<std::vector<int>> adj(n);
            for (auto [a, b] : s.edges) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
            for (int i = 0; i < n; ++i)
                states[i] = static_cast<int>(sample_categorical(
                    st, std::vector<double>(k, 1.0)));
            std::vector<double> probs(k);
            for (int sweep = 0; sweep < s.gibbs_sweeps; ++sweep)
                for (int i = 0; i < n; ++i) {
                    for (int x = 0; x < k; ++x) {
                        int same = 0;
                        for (int j : adj[i])
                            if (states[j] == x) ++same;
                        probs[x] = std::exp(p[0] * same);
                    }
                    states[i] = static_cast<int>(sample_categorical(st, probs));
                }
        }
        d.values.assign(states.begin(), states.end());
        return d;
    };
    m.summary = [s](const Dataset& y) -> SummaryVector {
        return {static_cast<double>(monochrome_edge_count(s, y))};
    };
    if (enumeration_feasible(s)) {
        auto hist = std::make_shared<std::vector<double>>(grf_eta_histogram(s));
        m.log_evidence = [s, hist](const Dataset& y) {
            const double eta = static_cast<double>(monochrome_edge_count(s, y));
            return integrate_log(
                [&](double theta) {
                    return theta * eta - grf_log_z(*hist, theta) - std::log(s.theta_max);
                },
                0.0, s.theta_max);
        };
        m.log_marginal_summary = [s, hist](const SummaryVector& sv, std::size_t /*n*/) {
            const auto j = static_cast<std::size_t>(sv[0]);
            if (j >= hist->size() || (*hist)[j] <= 0.0) return kNegInf;
            const double log_c = std::log((*hist)[j]);
            return integrate_log(
                [&](double theta) {
                    return log_c + theta * sv[0] - grf_log_z(*hist, theta) -
                           std::log(s.theta_max);
                },
                0.0, s.theta_max);
        };
        m.log_g_factor = [s, hist](const Dataset& y) {
            const int eta = monochrome_edge_count(s, y);
            return -std::log((*hist)[static_cast<std::size_t>(eta)]);
        };
    }
    return m;
}

}  // namespace abclab
