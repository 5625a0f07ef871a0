#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dcgame/cone.hpp"
#include "dcgame/lp.hpp"

namespace dcgame::testing {

inline std::vector<double> random_distribution(std::mt19937_64& rng, int d) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<size_t>(d));
    double z = 0.0;
    for (double& v : w) {
        v = expo(rng) + 1e-6;
        z += v;
    }
    for (double& v : w) v /= z;
    return w;
}

inline Normal random_normal(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < 0.2) {
        std::uniform_int_distribution<int> pick(0, d - 1);
        return Normal::indicator(pick(rng), d);
    }
    return Normal(random_distribution(rng, d));
}

inline DCCone random_cone(std::mt19937_64& rng, const Alphabet& a, int max_cells,
                          int max_normals) {
    std::uniform_int_distribution<int> ncells(1, max_cells);
    std::uniform_int_distribution<int> nnorm(1, max_normals);
    std::vector<Cell> cells;
    const int k = ncells(rng);
    for (int i = 0; i < k; ++i) {
        Cell c;
        const int m = nnorm(rng);
        for (int j = 0; j < m; ++j) c.normals.push_back(random_normal(rng, a.size()));
        cells.push_back(std::move(c));
    }
    return DCCone(a, std::move(cells));
}

inline Portfolio random_portfolio(std::mt19937_64& rng, const Alphabet& a, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(static_cast<size_t>(a.size()));
    for (double& x : v) x = u(rng);
    return Portfolio(a, std::move(v));
}

/// Direct membership in dccone({g}) by eliminating the scaling by hand.
inline bool generator_member_oracle(const Portfolio& g, const Portfolio& s, double tol = 1e-9) {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (int y = 0; y < g.alphabet.size(); ++y) {
        const double gy = g.payoffs[static_cast<size_t>(y)];
        const double sy = s.payoffs[static_cast<size_t>(y)];
        if (gy > 0.0) lo = std::max(lo, sy / gy);
        else if (gy < 0.0) hi = std::min(hi, sy / gy);
        else if (sy > tol) return false;
    }
    return lo <= hi + tol;
}

/// Membership in the min-plus combination via the one-dimensional shift
/// bracket, independent of the cell-product construction.
inline bool minplus_member_oracle(const DCCone& a, const DCCone& b, double lambda,
                                  const Portfolio& s, double tol = 1e-9) {
    if (a.is_empty_cone() || b.is_empty_cone()) return false;
    if (lambda == 0.0) return contains_portfolio(a, s, tol);
    if (lambda == 1.0) return contains_portfolio(b, s, tol);
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& ca : a.cells()) {
        double hi = inf;
        if (!ca.is_full()) {
            double worst = -inf;
            for (const auto& p : ca.normals) worst = std::max(worst, dot(p, s.payoffs));
            hi = -worst / lambda;
        }
        for (const auto& cb : b.cells()) {
            double lo = -inf;
            if (!cb.is_full()) {
                double worst = -inf;
                for (const auto& q : cb.normals) worst = std::max(worst, dot(q, s.payoffs));
                lo = worst / (1.0 - lambda);
            }
            if (lo <= hi + tol) return true;
        }
    }
    return false;
}

/// Kantorovich value max over couplings of <pi, s> for marginals (p, q);
/// membership in the product of the two halfspace cones is value <= 0.
inline double coupling_value(const std::vector<double>& p, const std::vector<double>& q,
                             const std::vector<double>& s) {
    const int dy = static_cast<int>(p.size());
    const int dz = static_cast<int>(q.size());
    LinearProgram lp = LinearProgram::maximize(s);
    for (int i = 0; i < dy * dz; ++i) lp.bound(i, 0.0, 1.0);
    for (int y = 0; y < dy; ++y) {
        std::vector<double> row(static_cast<size_t>(dy * dz), 0.0);
        for (int z = 0; z < dz; ++z) row[static_cast<size_t>(y * dz + z)] = 1.0;
        lp.subject_to(std::move(row), Relation::Equal, p[static_cast<size_t>(y)]);
    }
    for (int z = 0; z < dz; ++z) {
        std::vector<double> row(static_cast<size_t>(dy * dz), 0.0);
        for (int y = 0; y < dy; ++y) row[static_cast<size_t>(y * dz + z)] = 1.0;
        lp.subject_to(std::move(row), Relation::Equal, q[static_cast<size_t>(z)]);
    }
    LPResult r = solve_lp(lp);
    return r.value;
}

}  // namespace dcgame::testing
