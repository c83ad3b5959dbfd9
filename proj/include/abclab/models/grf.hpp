#ifndef ABCLAB_MODELS_GRF_HPP
#define ABCLAB_MODELS_GRF_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "abclab/model.hpp"

namespace abclab {

// Gibbs random field f(y|theta) = exp(theta * eta(y)) / Z_theta over
// configurations of n_sites sites with state_count states each, where eta is
// the monochromatic-edge count of the given structure.  theta ~ U(0, theta_max).
struct GrfSpec {
    int state_count = 2;
    std::size_t n_sites = 0;
    std::vector<std::pair<int, int>> edges;
    double theta_max = 2.0;
    // Burn-in sweeps for cyclic structures (acyclic ones are sampled exactly).
    int gibbs_sweeps = 500;
};

// Edge builders.
GrfSpec chain_grf(std::size_t n, int state_count = 2, double theta_max = 2.0);
// Chain skipping `step` sites: edges (i, i+step).
GrfSpec step_chain_grf(std::size_t n, int step, int state_count = 2, double theta_max = 2.0);
GrfSpec lattice_grf(std::size_t rows, std::size_t cols, int state_count = 2,
                    double theta_max = 2.0);

int monochrome_edge_count(const GrfSpec& spec, std::span<const int> states);
int monochrome_edge_count(const GrfSpec& spec, const Dataset& y);

// Number of configurations per eta value, by full enumeration.
// Requires state_count^n_sites <= 2^20.
std::vector<double> grf_eta_histogram(const GrfSpec& spec);
double grf_log_z(const std::vector<double>& eta_histogram, double theta);

// Exact configuration draw for acyclic structures (message passing along the
// forest); throws std::invalid_argument on a cyclic structure.
std::vector<int> grf_sample_exact(const GrfSpec& spec, double theta, RandomStream& stream);

// ModelSpec with theta ~ U(0, theta_max) and summary eta.  Exact hooks are
// present only when the enumeration budget state_count^n <= 2^20 holds.
ModelSpec grf_model(const GrfSpec& spec, const std::string& name = "grf");

}  // namespace abclab

#endif
