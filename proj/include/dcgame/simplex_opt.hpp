#pragma once

#include <functional>
#include <vector>

namespace dcgame {

struct SimplexMinOptions {
    double tol = 1e-6;
    long max_iterations = 100000;
    double step0 = 2.0;
    int stall_window = 50;
    /// Optional start point (concatenated blocks); barycenter when empty.
    std::vector<double> start;
};

struct SimplexMinResult {
    double value = 0.0;
    std::vector<double> argmin;
    long iterations = 0;
    bool converged = false;
};

/// Minimizes a smooth convex f over the product of probability simplices with
/// the given block dimensions. x is the concatenation of the blocks. Uses
/// exponentiated-gradient steps with a diminishing base step size and a
/// monotone backoff; deterministic start at the barycenter.
/// Throws SolverFailure on a non-finite gradient at an interior point.
SimplexMinResult minimize_convex_over_simplices(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& grad,
    const std::vector<int>& simplex_dims,
    const SimplexMinOptions& opts = {});

}  // namespace dcgame
