#include "dcgame/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dcgame/errors.hpp"
#include "dcgame/lp.hpp"
#include "dcgame/simplex_opt.hpp"

namespace dcgame {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double log2_safe(double x) { return std::log2(std::max(x, 1e-300)); }

std::vector<double> floor_distribution(std::vector<double> q, double floor) {
    double z = 0.0;
    for (double& v : q) {
        v = std::max(v, floor);
        z += v;
    }
    for (double& v : q) v /= z;
    return q;
}

// min over mixtures of the cell's normals of KL(mix || q), plus the argmin
// posterior. q is assumed strictly positive.
struct CellMin {
    double value;
    std::vector<double> posterior;
    std::vector<double> mix;
};

CellMin cell_min_kl(const Cell& cell, const std::vector<double>& q, double tol,
                    const std::vector<double>* warm = nullptr) {
    const int d = static_cast<int>(q.size());
    const int k = static_cast<int>(cell.normals.size());
    CellMin out;
    if (k == 1) {
        out.posterior = cell.normals.front().weights();
        out.mix = {1.0};
        out.value = kl_divergence_bits(out.posterior, q);
        return out;
    }
    auto mixture = [&](const std::vector<double>& mu) {
        std::vector<double> p(static_cast<size_t>(d), 0.0);
        for (int j = 0; j < k; ++j)
            for (int y = 0; y < d; ++y)
                p[static_cast<size_t>(y)] += mu[static_cast<size_t>(j)] * cell.normals[static_cast<size_t>(j)][y];
        return p;
    };
    auto f = [&](const std::vector<double>& mu) {
        return kl_divergence_bits(mixture(mu), q);
    };
    auto grad = [&](const std::vector<double>& mu, std::vector<double>& g) {
        std::vector<double> p = mixture(mu);
        for (int j = 0; j < k; ++j) {
            double s = 0.0;
            for (int y = 0; y < d; ++y) {
                const double py = p[static_cast<size_t>(y)];
                const double ratio = log2_safe(py) - log2_safe(q[static_cast<size_t>(y)]);
                s += cell.normals[static_cast<size_t>(j)][y] *
                     (std::clamp(ratio, -60.0, 60.0) + 1.0 / kLn2);
            }
            g[static_cast<size_t>(j)] = s;
        }
    };
    SimplexMinOptions opts;
    opts.tol = tol;
    opts.max_iterations = 5000;
    if (warm && static_cast<int>(warm->size()) == k) opts.start = *warm;
    SimplexMinResult r = minimize_convex_over_simplices(f, grad, {k}, opts);
    out.value = r.value;
    out.mix = r.argmin;
    out.posterior = mixture(r.argmin);
    return out;
}

}  // namespace

bool CapacityResult::is_finite() const { return std::isfinite(value); }

double binary_entropy(double eps) {
    if (eps <= 0.0 || eps >= 1.0) {
        if (eps == 0.0 || eps == 1.0) return 0.0;
        throw InputError("binary entropy argument outside [0,1]");
    }
    return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

double requirement_value(int L, double eps) {
    if (L < 1) throw InputError("L must be >= 1");
    if (eps <= 0.0 || eps >= 1.0) throw InputError("eps must lie in (0,1)");
    if (L == 1) return 0.0;
    return std::log2(static_cast<double>(L)) - binary_entropy(eps) -
           eps * std::log2(static_cast<double>(L - 1));
}

double kl_divergence_bits(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InputError("KL divergence dimension mismatch");
    double s = 0.0;
    for (size_t y = 0; y < p.size(); ++y) {
        if (p[y] <= 0.0) continue;
        if (q[y] <= 0.0) return std::numeric_limits<double>::infinity();
        s += p[y] * (std::log2(p[y]) - std::log2(q[y]));
    }
    return std::max(s, 0.0);
}

HalfspaceProjection kl_project_halfspace(std::span<const double> q, std::span<const double> a) {
    if (q.size() != a.size()) throw InputError("projection dimension mismatch");
    const size_t d = q.size();
    HalfspaceProjection out;
    out.feasible = true;
    double qa = 0.0;
    for (size_t y = 0; y < d; ++y) qa += q[y] * a[y];
    if (qa <= 0.0) {
        out.value = 0.0;
        out.p.assign(q.begin(), q.end());
        return out;
    }
    double amin = a[0];
    for (double v : a) amin = std::min(amin, v);
    if (amin > 0.0) {  // no distribution can satisfy <p,a> <= 0
        out.feasible = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    // Tilt p_nu ∝ q 2^{-nu a}; <p_nu, a> decreases from qa > 0 to ~amin <= 0.
    auto tilt = [&](double nu) {
        std::vector<double> p(d);
        double z = 0.0;
        for (size_t y = 0; y < d; ++y) {
            p[y] = q[y] * std::exp2(-nu * (a[y] - amin));
            z += p[y];
        }
        for (double& v : p) v /= z;
        return p;
    };
    auto constraint = [&](double nu) {
        std::vector<double> p = tilt(nu);
        double s = 0.0;
        for (size_t y = 0; y < d; ++y) s += p[y] * a[y];
        return s;
    };
    double hi = 1.0;
    int guard = 0;
    while (constraint(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 200) {
            // boundary case: only the argmin symbols can carry mass
            std::vector<double> p(d, 0.0);
            double z = 0.0;
            for (size_t y = 0; y < d; ++y)
                if (a[y] <= amin + 1e-15) {
                    p[y] = q[y];
                    z += q[y];
                }
            for (double& v : p) v /= z;
            out.p = p;
            out.value = kl_divergence_bits(p, q);
            return out;
        }
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (constraint(mid) > 0.0) lo = mid; else hi = mid;
    }
    out.p = tilt(hi);
    out.value = kl_divergence_bits(out.p, q);
    return out;
}

double capacity_objective(const DCCone& a, const std::vector<double>& q, double tol,
                          std::vector<Normal>* posteriors) {
    if (static_cast<int>(q.size()) != a.alphabet().size())
        throw InputError("prior dimension mismatch");
    if (posteriors) posteriors->clear();
    double best = 0.0;
    std::vector<double> qf = floor_distribution(q, 1e-300);
    for (const auto& cell : a.cells()) {
        if (cell.is_full()) return std::numeric_limits<double>::infinity();
        CellMin cm = cell_min_kl(cell, qf, tol);
        best = std::max(best, cm.value);
        if (posteriors) posteriors->push_back(Normal(cm.posterior));
    }
    return best;
}

namespace {

CapacityResult solve_blahut_arimoto(const DCCone& a, double tol, const CapacityOptions& opts) {
    std::vector<std::vector<double>> rows;
    for (const auto& c : a.cells()) {
        if (c.normals.size() != 1)
            throw InputError("blahut_arimoto requires single-normal cells");
        rows.push_back(c.normals.front().weights());
    }
    const int nx = static_cast<int>(rows.size());
    const int d = a.alphabet().size();
    std::vector<double> px(static_cast<size_t>(nx), 1.0 / nx);
    std::vector<double> q(static_cast<size_t>(d), 0.0);
    std::vector<double> dx(static_cast<size_t>(nx), 0.0);
    CapacityResult res;
    res.method = "blahut_arimoto";
    double lower = 0.0, upper = std::numeric_limits<double>::infinity();
    for (long it = 1; it <= opts.max_iterations; ++it) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < d; ++y)
                q[static_cast<size_t>(y)] += px[static_cast<size_t>(x)] * rows[static_cast<size_t>(x)][static_cast<size_t>(y)];
        upper = 0.0;
        for (int x = 0; x < nx; ++x) {
            dx[static_cast<size_t>(x)] = kl_divergence_bits(rows[static_cast<size_t>(x)], q);
            upper = std::max(upper, dx[static_cast<size_t>(x)]);
        }
        double z = 0.0;
        for (int x = 0; x < nx; ++x) {
            px[static_cast<size_t>(x)] *= std::exp2(dx[static_cast<size_t>(x)]);
            z += px[static_cast<size_t>(x)];
        }
        for (double& v : px) v /= z;
        lower = std::log2(z);
        res.iterations = it;
        if (upper - lower < tol / 10.0) break;
    }
    if (upper - lower >= tol)
        throw SolverFailure("blahut-arimoto did not converge within the iteration cap");
    res.value = 0.5 * (upper + lower);
    res.gap = upper - lower;
    res.prior = Normal(floor_distribution(q, 1e-15));
    for (const auto& r : rows) res.posteriors.push_back(Normal(r));
    return res;
}

// Joint convex program: minimize over the prior simplex and one mixture
// simplex per multi-normal cell the soft maximum of the per-cell divergences.
// Annealing the softmax temperature recovers the exact max.
CapacityResult solve_minimax(const DCCone& a, double tol, const CapacityOptions& opts) {
    const int d = a.alphabet().size();
    const int ncells = static_cast<int>(a.cells().size());
    std::vector<int> dims{d};
    std::vector<int> mu_offset(static_cast<size_t>(ncells), -1);
    for (int i = 0; i < ncells; ++i) {
        const int k = static_cast<int>(a.cells()[static_cast<size_t>(i)].normals.size());
        if (k > 1) {
            mu_offset[static_cast<size_t>(i)] = static_cast<int>(dims.size());
            dims.push_back(k);
        }
    }
    std::vector<size_t> block_start(dims.size() + 1, 0);
    for (size_t b = 0; b < dims.size(); ++b)
        block_start[b + 1] = block_start[b] + static_cast<size_t>(dims[b]);

    const double floor = opts.interior_floor;
    auto cell_divergences = [&](const std::vector<double>& x, std::vector<std::vector<double>>& mixes,
                                std::vector<double>& divs) {
        mixes.assign(static_cast<size_t>(ncells), {});
        divs.assign(static_cast<size_t>(ncells), 0.0);
        for (int i = 0; i < ncells; ++i) {
            const auto& cell = a.cells()[static_cast<size_t>(i)];
            std::vector<double> p(static_cast<size_t>(d), 0.0);
            if (mu_offset[static_cast<size_t>(i)] < 0) {
                p = cell.normals.front().weights();
            } else {
                const size_t off = block_start[static_cast<size_t>(mu_offset[static_cast<size_t>(i)])];
                for (size_t j = 0; j < cell.normals.size(); ++j)
                    for (int y = 0; y < d; ++y)
                        p[static_cast<size_t>(y)] += x[off + j] * cell.normals[j][y];
            }
            double s = 0.0;
            for (int y = 0; y < d; ++y) {
                const double py = p[static_cast<size_t>(y)];
                if (py <= 0.0) continue;
                s += py * (log2_safe(py) - log2_safe(std::max(x[static_cast<size_t>(y)], floor)));
            }
            divs[static_cast<size_t>(i)] = s;
            mixes[static_cast<size_t>(i)] = std::move(p);
        }
    };

    double tau = 0.25;
    std::vector<double> start;
    CapacityResult res;
    res.method = "minimax";
    long iter_total = 0;

    std::vector<std::vector<double>> mixes;
    std::vector<double> divs;
    const std::vector<double> taus{0.25, 0.05, 0.01, 0.002, std::min(0.002, tol / 4.0)};
    for (double t : taus) {
        tau = t;
        auto f = [&](const std::vector<double>& x) {
            cell_divergences(x, mixes, divs);
            double m = divs[0];
            for (double v : divs) m = std::max(m, v);
            double z = 0.0;
            for (double v : divs) z += std::exp2((v - m) / tau);
            return m + tau * std::log2(z);
        };
        auto grad = [&](const std::vector<double>& x, std::vector<double>& g) {
            cell_divergences(x, mixes, divs);
            double m = divs[0];
            for (double v : divs) m = std::max(m, v);
            std::vector<double> w(static_cast<size_t>(ncells));
            double z = 0.0;
            for (int i = 0; i < ncells; ++i) {
                w[static_cast<size_t>(i)] = std::exp2((divs[static_cast<size_t>(i)] - m) / tau);
                z += w[static_cast<size_t>(i)];
            }
            for (double& v : w) v /= z;
            std::fill(g.begin(), g.end(), 0.0);
            for (int i = 0; i < ncells; ++i) {
                const double wi = w[static_cast<size_t>(i)];
                const auto& p = mixes[static_cast<size_t>(i)];
                for (int y = 0; y < d; ++y) {
                    const double qy = std::max(x[static_cast<size_t>(y)], floor);
                    g[static_cast<size_t>(y)] -= wi * p[static_cast<size_t>(y)] / (qy * kLn2);
                }
                const int blk = mu_offset[static_cast<size_t>(i)];
                if (blk < 0) continue;
                const auto& cell = a.cells()[static_cast<size_t>(i)];
                const size_t off = block_start[static_cast<size_t>(blk)];
                for (size_t j = 0; j < cell.normals.size(); ++j) {
                    double s = 0.0;
                    for (int y = 0; y < d; ++y) {
                        const double ratio = log2_safe(p[static_cast<size_t>(y)]) -
                                             log2_safe(std::max(x[static_cast<size_t>(y)], floor));
                        s += cell.normals[j][y] * (std::clamp(ratio, -60.0, 60.0) + 1.0 / kLn2);
                    }
                    g[off + j] = wi * s;
                }
            }
        };
        SimplexMinOptions sopts;
        sopts.tol = std::max(tol / 10.0, 1e-9);
        sopts.max_iterations = opts.max_iterations / static_cast<long>(taus.size());
        sopts.start = start;
        SimplexMinResult r = minimize_convex_over_simplices(f, grad, dims, sopts);
        start = r.argmin;
        iter_total += r.iterations;
    }

    // Candidate priors, scored by the exact objective.
    std::vector<std::vector<double>> candidates;
    candidates.emplace_back(start.begin(), start.begin() + d);
    candidates.emplace_back(static_cast<size_t>(d), 1.0 / d);
    if (auto w = noninformativeness_witness(a)) candidates.push_back(*w);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_q;
    std::vector<Normal> best_post;
    for (auto& q : candidates) {
        std::vector<double> qf = floor_distribution(q, floor);
        std::vector<Normal> post;
        const double v = capacity_objective(a, qf, std::max(tol / 10.0, 1e-9), &post);
        if (v < best) {
            best = v;
            best_q = qf;
            best_post = std::move(post);
        }
    }
    res.value = best;
    res.prior = Normal(best_q);
    res.posteriors = std::move(best_post);
    res.iterations = iter_total;
    res.gap = tau * std::log2(std::max(2, ncells));
    return res;
}

CapacityResult solve_grid(const DCCone& a, double tol, const CapacityOptions& opts) {
    const int d = a.alphabet().size();
    if (d > 3) throw InputError("oracle_grid supports alphabets of size <= 3");
    const int n = std::max(1, static_cast<int>(std::llround(1.0 / opts.grid_step)));
    CapacityResult res;
    res.method = "oracle_grid";
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_q;
    auto consider = [&](std::vector<double> q) {
        q = floor_distribution(std::move(q), opts.interior_floor);
        const double v = capacity_objective(a, q, std::max(tol / 10.0, 1e-9));
        ++res.iterations;
        if (v < best) {
            best = v;
            best_q = q;
        }
    };
    if (d == 1) {
        consider({1.0});
    } else if (d == 2) {
        for (int i = 0; i <= n; ++i)
            consider({static_cast<double>(i) / n, static_cast<double>(n - i) / n});
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n - i; ++j)
                consider({static_cast<double>(i) / n, static_cast<double>(j) / n,
                          static_cast<double>(n - i - j) / n});
    }
    res.value = best;
    res.prior = Normal(best_q);
    std::vector<Normal> post;
    capacity_objective(a, best_q, std::max(tol / 10.0, 1e-9), &post);
    res.posteriors = std::move(post);
    res.gap = 0.0;
    return res;
}

}  // namespace

CapacityResult info_capacity(const DCCone& a, CapacityMethod method, double tol,
                             const CapacityOptions& opts) {
    if (tol <= 0) throw InputError("tol must be positive");
    CapacityResult res;
    if (a.is_empty_cone()) {
        res.value = -std::numeric_limits<double>::infinity();
        res.method = "degenerate";
        return res;
    }
    if (a.has_full_cell()) {
        res.value = std::numeric_limits<double>::infinity();
        res.method = "degenerate";
        return res;
    }
    bool all_single = true;
    for (const auto& c : a.cells())
        if (c.normals.size() != 1) { all_single = false; break; }

    switch (method) {
        case CapacityMethod::BlahutArimoto:
            if (!all_single)
                throw InputError("blahut_arimoto requires single-normal cells");
            return solve_blahut_arimoto(a, tol, opts);
        case CapacityMethod::Minimax:
            return solve_minimax(a, tol, opts);
        case CapacityMethod::OracleGrid:
            return solve_grid(a, tol, opts);
        case CapacityMethod::Auto:
            return all_single ? solve_blahut_arimoto(a, tol, opts) : solve_minimax(a, tol, opts);
    }
    throw InputError("unknown capacity method");
}

CapacityValidation validate_capacity_reduction(const DCCone& a, const CapacityResult& r,
                                               int samples_per_cell, unsigned seed, double tol) {
    CapacityValidation out;
    if (!r.is_finite()) return out;
    const int d = a.alphabet().size();
    const std::vector<double>& q = r.prior.weights();

    std::vector<Normal> post;
    const double value = capacity_objective(a, q, std::max(tol / 10.0, 1e-9), &post);
    out.reconstruction_gap = std::fabs(value - r.value);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (size_t i = 0; i < a.cells().size(); ++i) {
        const Cell& cell = a.cells()[i];
        if (cell.is_full()) continue;
        CellMin cm = cell_min_kl(cell, q, std::max(tol / 10.0, 1e-9));

        // Supporting portfolio built from the worst posterior attains the
        // cell value as a lower bound on the inner game.
        std::vector<double> v(static_cast<size_t>(d));
        double pv = 0.0;
        for (int y = 0; y < d; ++y) {
            v[static_cast<size_t>(y)] = std::clamp(
                log2_safe(cm.posterior[static_cast<size_t>(y)]) - log2_safe(q[static_cast<size_t>(y)]),
                -60.0, 60.0);
            pv += cm.posterior[static_cast<size_t>(y)] * v[static_cast<size_t>(y)];
        }
        std::vector<double> support(static_cast<size_t>(d));
        for (int y = 0; y < d; ++y) support[static_cast<size_t>(y)] = pv - v[static_cast<size_t>(y)];
        bool in_cell = true;
        for (const auto& p : cell.normals)
            if (dot(p, support) > tol) in_cell = false;
        if (in_cell) {
            HalfspaceProjection proj = kl_project_halfspace(q, support);
            out.support_shortfall = std::max(out.support_shortfall, cm.value - proj.value);
        }

        // Random cell portfolios never beat the hull value.
        for (int s = 0; s < samples_per_cell; ++s) {
            std::vector<double> obj(static_cast<size_t>(d));
            for (double& x : obj) x = gauss(rng);
            LinearProgram lp = LinearProgram::maximize(obj);
            for (int y = 0; y < d; ++y) lp.bound(y, -1.0, 1.0);
            for (const auto& p : cell.normals) {
                std::vector<double> row(p.weights().begin(), p.weights().end());
                lp.subject_to(std::move(row), Relation::LessEq, 0.0);
            }
            LPResult lr = solve_lp(lp);
            if (lr.status != LPStatus::Optimal) continue;
            HalfspaceProjection proj = kl_project_halfspace(q, lr.solution);
            if (proj.feasible)
                out.sample_excess = std::max(out.sample_excess, proj.value - cm.value);
        }
    }
    out.ok = out.reconstruction_gap <= tol && out.sample_excess <= tol && out.support_shortfall <= tol;
    return out;
}

}  // namespace dcgame
