#include "dcgame/simplex_opt.hpp"

#include <algorithm>
#include <cmath>

#include "dcgame/errors.hpp"

namespace dcgame {

namespace {

// One exponentiated-gradient step on every block: x <- x * exp(-eta g),
// renormalized per block. Max-shifted for overflow safety.
void eg_step(const std::vector<double>& x, const std::vector<double>& g,
             const std::vector<int>& dims, double eta, std::vector<double>& out) {
    size_t off = 0;
    for (int d : dims) {
        double lo = g[off];
        for (size_t j = off; j < off + static_cast<size_t>(d); ++j) lo = std::min(lo, g[j]);
        double z = 0.0;
        for (size_t j = off; j < off + static_cast<size_t>(d); ++j) {
            out[j] = x[j] * std::exp(-eta * (g[j] - lo));
            z += out[j];
        }
        for (size_t j = off; j < off + static_cast<size_t>(d); ++j) out[j] /= z;
        off += static_cast<size_t>(d);
    }
}

}  // namespace

SimplexMinResult minimize_convex_over_simplices(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& grad,
    const std::vector<int>& simplex_dims,
    const SimplexMinOptions& opts) {
    if (simplex_dims.empty()) throw InputError("need at least one simplex block");
    size_t total = 0;
    for (int d : simplex_dims) {
        if (d <= 0) throw InputError("simplex dimension must be positive");
        total += static_cast<size_t>(d);
    }

    std::vector<double> x(total);
    if (!opts.start.empty()) {
        if (opts.start.size() != total) throw InputError("start point has wrong length");
        x = opts.start;
        size_t off = 0;
        for (int d : simplex_dims) {
            double z = 0.0;
            for (size_t j = off; j < off + static_cast<size_t>(d); ++j) {
                x[j] = std::max(x[j], 1e-15);
                z += x[j];
            }
            for (size_t j = off; j < off + static_cast<size_t>(d); ++j) x[j] /= z;
            off += static_cast<size_t>(d);
        }
    } else {
        size_t off = 0;
        for (int d : simplex_dims) {
            for (size_t j = off; j < off + static_cast<size_t>(d); ++j)
                x[j] = 1.0 / static_cast<double>(d);
            off += static_cast<size_t>(d);
        }
    }

    SimplexMinResult res;
    res.argmin = x;
    res.value = f(x);
    if (!std::isfinite(res.value)) throw SolverFailure("objective not finite at start point");

    std::vector<double> g(total), cand(total);
    double fx = res.value;
    int stall = 0;
    const double stall_eps = opts.tol / 10.0;
    double eta = opts.step0;

    for (long t = 1; t <= opts.max_iterations; ++t) {
        grad(x, g);
        for (double v : g)
            if (!std::isfinite(v)) throw SolverFailure("non-finite gradient at interior point");
        double gmax = 0.0;
        for (double v : g) gmax = std::max(gmax, std::fabs(v));

        // Monotone step control: shrink until f stops increasing, grow again
        // after an accepted step.
        double trial = eta / (1.0 + gmax);
        double fc = 0.0;
        bool moved = false;
        for (int back = 0; back < 60; ++back) {
            eg_step(x, g, simplex_dims, trial, cand);
            fc = f(cand);
            if (std::isfinite(fc) && fc <= fx) { moved = true; break; }
            trial *= 0.5;
            eta *= 0.5;
        }
        if (moved) {
            x.swap(cand);
            fx = fc;
            eta = std::min(eta * 1.3, 1e6);
        }
        if (fx < res.value - 1e-18) {
            if (res.value - fx < stall_eps) ++stall; else stall = 0;
            res.value = fx;
            res.argmin = x;
        } else {
            ++stall;
        }
        res.iterations = t;
        if (stall >= opts.stall_window) { res.converged = true; break; }
    }
    return res;
}

}  // namespace dcgame
