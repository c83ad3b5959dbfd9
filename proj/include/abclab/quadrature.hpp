#ifndef ABCLAB_QUADRATURE_HPP
#define ABCLAB_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abclab {

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, double last_lo, double last_hi)
        : std::runtime_error(msg), bracket_lo(last_lo), bracket_hi(last_hi) {}
    double bracket_lo;
    double bracket_hi;
};

// log of the integral of exp(log_f) over (lo, hi).  Either endpoint may be
// infinite; half-infinite tails are mapped to (0,1) via t -> t/(1-t).
// Adaptive interval bisection with a 15-point Gauss-Legendre rule per panel,
// accumulated in log space.  Deterministic.
double integrate_log(const std::function<double(double)>& log_f,
                     double lo, double hi, double rel_tol = 1e-9);

// Nodes and log-weights of the composite 15-point Gauss-Legendre rule with
// `panels` equal panels on [lo, hi]; building block for tensor rules.
std::vector<std::pair<double, double>> gauss15_points(double lo, double hi, int panels);

}  // namespace abclab

#endif
