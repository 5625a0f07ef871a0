#include "dcgame/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcgame/errors.hpp"

namespace dcgame {

LinearProgram LinearProgram::maximize(std::vector<double> c) {
    LinearProgram lp;
    lp.variable_count = static_cast<int>(c.size());
    lp.objective = std::move(c);
    lp.bounds.assign(static_cast<size_t>(lp.variable_count), std::nullopt);
    return lp;
}

LinearProgram& LinearProgram::subject_to(std::vector<double> row, Relation rel, double rhs) {
    constraints.push_back({std::move(row), rel, rhs});
    return *this;
}

LinearProgram& LinearProgram::bound(int var, double lo, double hi) {
    bounds.at(static_cast<size_t>(var)) = VariableBounds{lo, hi};
    return *this;
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;
constexpr long kMaxIterations = 200000;

struct Tableau {
    int rows = 0;
    int cols = 0;  // structural + slack + artificial columns, excluding rhs
    std::vector<std::vector<double>> a;  // rows x (cols + 1), last column = rhs
    std::vector<int> basis;              // basic column per row
    std::vector<bool> eligible;          // columns allowed to enter

    double& at(int i, int j) { return a[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    double& rhs(int i) { return a[static_cast<size_t>(i)][static_cast<size_t>(cols)]; }
};

void pivot(Tableau& t, int pr, int pc) {
    auto& prow = t.a[static_cast<size_t>(pr)];
    const double piv = prow[static_cast<size_t>(pc)];
    for (double& v : prow) v /= piv;
    for (int i = 0; i < t.rows; ++i) {
        if (i == pr) continue;
        auto& row = t.a[static_cast<size_t>(i)];
        const double f = row[static_cast<size_t>(pc)];
        if (std::fabs(f) <= 0.0) continue;
        for (int j = 0; j <= t.cols; ++j)
            row[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
        row[static_cast<size_t>(pc)] = 0.0;
    }
    t.basis[static_cast<size_t>(pr)] = pc;
}

// Runs the simplex loop on the given objective (maximization). Returns false
// if unbounded. Bland's rule on both entering and leaving choices.
bool run_simplex(Tableau& t, std::vector<double>& cost, double& value, long& iterations) {
    // cost holds reduced costs (c_j - z_j); value holds current objective.
    while (true) {
        if (++iterations > kMaxIterations)
            throw SolverFailure("simplex iteration cap exceeded");
        int entering = -1;
        for (int j = 0; j < t.cols; ++j) {
            if (!t.eligible[static_cast<size_t>(j)]) continue;
            if (cost[static_cast<size_t>(j)] > kCostEps) { entering = j; break; }
        }
        if (entering < 0) return true;
        int leaving = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < t.rows; ++i) {
            const double aie = t.at(i, entering);
            if (aie <= kPivotEps) continue;
            const double ratio = t.rhs(i) / aie;
            if (ratio < best_ratio - kPivotEps ||
                (ratio < best_ratio + kPivotEps &&
                 (leaving < 0 || t.basis[static_cast<size_t>(i)] < t.basis[static_cast<size_t>(leaving)]))) {
                best_ratio = ratio;
                leaving = i;
            }
        }
        if (leaving < 0) return false;  // unbounded direction
        pivot(t, leaving, entering);
        // Update reduced costs by eliminating the entering column.
        const double ce = cost[static_cast<size_t>(entering)];
        if (std::fabs(ce) > 0.0) {
            auto& prow = t.a[static_cast<size_t>(leaving)];
            for (int j = 0; j < t.cols; ++j)
                cost[static_cast<size_t>(j)] -= ce * prow[static_cast<size_t>(j)];
            cost[static_cast<size_t>(entering)] = 0.0;
            value += ce * t.rhs(leaving);
        }
    }
}

}  // namespace

LPResult solve_lp(const LinearProgram& lp, double tol) {
    if (tol <= 0) throw InputError("tol must be positive");
    if (lp.variable_count <= 0) throw InputError("LP needs at least one variable");
    if (static_cast<int>(lp.objective.size()) != lp.variable_count)
        throw InputError("objective length mismatch");
    if (!lp.bounds.empty() && static_cast<int>(lp.bounds.size()) != lp.variable_count)
        throw InputError("bounds length mismatch");
    for (const auto& c : lp.constraints)
        if (static_cast<int>(c.coeffs.size()) != lp.variable_count)
            throw InputError("constraint length mismatch");
    for (const auto& b : lp.bounds)
        if (b && (!std::isfinite(b->lower) || !std::isfinite(b->upper) || b->lower > b->upper))
            throw InputError("variable bounds must be finite with lower <= upper");

    const int n = lp.variable_count;
    // Column layout per original variable: boxed variables become one shifted
    // column (x = lo + u) plus an upper-bound row; free variables split u+ - u-.
    std::vector<int> col_of(static_cast<size_t>(n), -1);
    std::vector<bool> is_split(static_cast<size_t>(n), false);
    std::vector<double> shift(static_cast<size_t>(n), 0.0);
    int ncols = 0;
    for (int j = 0; j < n; ++j) {
        col_of[static_cast<size_t>(j)] = ncols;
        if (!lp.bounds.empty() && lp.bounds[static_cast<size_t>(j)]) {
            shift[static_cast<size_t>(j)] = lp.bounds[static_cast<size_t>(j)]->lower;
            ncols += 1;
        } else {
            is_split[static_cast<size_t>(j)] = true;
            ncols += 2;
        }
    }

    struct Row { std::vector<double> a; Relation rel; double b; bool from_box; bool flipped = false; };
    std::vector<Row> rows;
    auto expand = [&](const std::vector<double>& coeffs) {
        std::vector<double> out(static_cast<size_t>(ncols), 0.0);
        for (int j = 0; j < n; ++j) {
            const double c = coeffs[static_cast<size_t>(j)];
            if (c == 0.0) continue;
            const int base = col_of[static_cast<size_t>(j)];
            out[static_cast<size_t>(base)] += c;
            if (is_split[static_cast<size_t>(j)]) out[static_cast<size_t>(base + 1)] -= c;
        }
        return out;
    };
    for (const auto& c : lp.constraints) {
        double adjust = 0.0;
        for (int j = 0; j < n; ++j) adjust += c.coeffs[static_cast<size_t>(j)] * shift[static_cast<size_t>(j)];
        rows.push_back({expand(c.coeffs), c.rel, c.rhs - adjust, false});
    }
    for (int j = 0; j < n; ++j) {
        if (!lp.bounds.empty() && lp.bounds[static_cast<size_t>(j)]) {
            std::vector<double> a(static_cast<size_t>(ncols), 0.0);
            a[static_cast<size_t>(col_of[static_cast<size_t>(j)])] = 1.0;
            rows.push_back({std::move(a),
                            Relation::LessEq,
                            lp.bounds[static_cast<size_t>(j)]->upper - lp.bounds[static_cast<size_t>(j)]->lower,
                            true});
        }
    }

    const int m = static_cast<int>(rows.size());
    // Normalize rhs >= 0, then add slack/surplus and artificials.
    for (auto& r : rows) {
        if (r.b < 0) {
            for (double& v : r.a) v = -v;
            r.b = -r.b;
            r.rel = r.rel == Relation::LessEq ? Relation::GreaterEq
                   : r.rel == Relation::GreaterEq ? Relation::LessEq
                                                  : Relation::Equal;
            r.flipped = true;
        }
    }
    int nslack = 0, nart = 0;
    for (const auto& r : rows) {
        if (r.rel != Relation::Equal) ++nslack;
        if (r.rel != Relation::LessEq) ++nart;
    }
    Tableau t;
    t.rows = m;
    t.cols = ncols + nslack + nart;
    t.a.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(t.cols + 1), 0.0));
    t.basis.assign(static_cast<size_t>(m), -1);
    t.eligible.assign(static_cast<size_t>(t.cols), true);

    std::vector<int> slack_col(static_cast<size_t>(m), -1), art_col(static_cast<size_t>(m), -1);
    int sc = ncols, ac = ncols + nslack;
    for (int i = 0; i < m; ++i) {
        auto& r = rows[static_cast<size_t>(i)];
        for (int j = 0; j < ncols; ++j) t.at(i, j) = r.a[static_cast<size_t>(j)];
        t.rhs(i) = r.b;
        if (r.rel == Relation::LessEq) {
            slack_col[static_cast<size_t>(i)] = sc;
            t.at(i, sc) = 1.0;
            t.basis[static_cast<size_t>(i)] = sc;
            ++sc;
        } else {
            if (r.rel == Relation::GreaterEq) {
                slack_col[static_cast<size_t>(i)] = sc;
                t.at(i, sc) = -1.0;
                ++sc;
            }
            art_col[static_cast<size_t>(i)] = ac;
            t.at(i, ac) = 1.0;
            t.basis[static_cast<size_t>(i)] = ac;
            ++ac;
        }
    }

    long iterations = 0;
    LPResult res;

    // Phase 1: maximize -sum(artificials).
    if (nart > 0) {
        std::vector<double> cost(static_cast<size_t>(t.cols), 0.0);
        double value = 0.0;
        for (int i = 0; i < m; ++i) {
            if (art_col[static_cast<size_t>(i)] < 0) continue;
            // Reduced costs for objective -sum(art) with artificial basis.
            for (int j = 0; j < t.cols; ++j) cost[static_cast<size_t>(j)] += t.at(i, j);
            value -= t.rhs(i);
        }
        for (int i = 0; i < m; ++i)
            if (art_col[static_cast<size_t>(i)] >= 0)
                cost[static_cast<size_t>(art_col[static_cast<size_t>(i)])] = 0.0;
        if (!run_simplex(t, cost, value, iterations))
            throw SolverFailure("phase-1 unbounded (should not happen)");
        if (value < -tol) {
            res.status = LPStatus::Infeasible;
            // Farkas certificate: phase-1 duals on the original constraint rows.
            res.certificate.assign(lp.constraints.size(), 0.0);
            for (int i = 0; i < static_cast<int>(lp.constraints.size()); ++i) {
                const auto& row = rows[static_cast<size_t>(i)];
                double y;
                if (slack_col[static_cast<size_t>(i)] >= 0) {
                    const double rc = cost[static_cast<size_t>(slack_col[static_cast<size_t>(i)])];
                    y = row.rel == Relation::LessEq ? -rc : rc;
                } else {
                    y = -1.0 - cost[static_cast<size_t>(art_col[static_cast<size_t>(i)])];
                }
                res.certificate[static_cast<size_t>(i)] = row.flipped ? -y : y;
            }
            return res;
        }
        // Drive leftover artificials out of the basis where possible.
        for (int i = 0; i < m; ++i) {
            const int b = t.basis[static_cast<size_t>(i)];
            if (b < ncols + nslack) continue;
            int pc = -1;
            for (int j = 0; j < ncols + nslack; ++j) {
                if (std::fabs(t.at(i, j)) > kPivotEps) { pc = j; break; }
            }
            if (pc >= 0) pivot(t, i, pc);
        }
        for (int j = ncols + nslack; j < t.cols; ++j) t.eligible[static_cast<size_t>(j)] = false;
    }

    // Phase 2.
    std::vector<double> obj_cols(static_cast<size_t>(t.cols), 0.0);
    double const_term = 0.0;
    for (int j = 0; j < n; ++j) {
        const double c = lp.objective[static_cast<size_t>(j)];
        const_term += c * shift[static_cast<size_t>(j)];
        const int base = col_of[static_cast<size_t>(j)];
        obj_cols[static_cast<size_t>(base)] += c;
        if (is_split[static_cast<size_t>(j)]) obj_cols[static_cast<size_t>(base + 1)] -= c;
    }
    std::vector<double> cost = obj_cols;
    double value = 0.0;
    for (int i = 0; i < m; ++i) {
        const int b = t.basis[static_cast<size_t>(i)];
        const double cb = obj_cols[static_cast<size_t>(b)];
        if (cb == 0.0) continue;
        for (int j = 0; j < t.cols; ++j) cost[static_cast<size_t>(j)] -= cb * t.at(i, j);
        value += cb * t.rhs(i);
    }
    for (int i = 0; i < m; ++i) cost[static_cast<size_t>(t.basis[static_cast<size_t>(i)])] = 0.0;
    if (!run_simplex(t, cost, value, iterations)) {
        res.status = LPStatus::Unbounded;
        return res;
    }

    res.status = LPStatus::Optimal;
    res.value = value + const_term;
    std::vector<double> u(static_cast<size_t>(ncols), 0.0);
    for (int i = 0; i < m; ++i) {
        const int b = t.basis[static_cast<size_t>(i)];
        if (b < ncols) u[static_cast<size_t>(b)] = t.rhs(i);
    }
    res.solution.assign(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const int base = col_of[static_cast<size_t>(j)];
        double x = u[static_cast<size_t>(base)] + shift[static_cast<size_t>(j)];
        if (is_split[static_cast<size_t>(j)]) x -= u[static_cast<size_t>(base + 1)];
        res.solution[static_cast<size_t>(j)] = x;
    }
    // Constraint duals from slack/artificial reduced costs.
    res.certificate.assign(lp.constraints.size(), 0.0);
    for (int i = 0; i < static_cast<int>(lp.constraints.size()); ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        double y = 0.0;
        if (slack_col[static_cast<size_t>(i)] >= 0) {
            const double rc = cost[static_cast<size_t>(slack_col[static_cast<size_t>(i)])];
            y = row.rel == Relation::LessEq ? -rc : rc;
        } else if (art_col[static_cast<size_t>(i)] >= 0) {
            y = -cost[static_cast<size_t>(art_col[static_cast<size_t>(i)])];
        }
        res.certificate[static_cast<size_t>(i)] = row.flipped ? -y : y;
    }
    return res;
}

MarginResult max_margin_feasibility(const std::vector<std::vector<double>>& nonstrict,
                                    const std::vector<std::vector<double>>& strict,
                                    int dim, double tol) {
    if (strict.empty()) throw InputError("strict normal list must be nonempty");
    for (const auto& v : nonstrict)
        if (static_cast<int>(v.size()) != dim) throw InputError("nonstrict normal has wrong dimension");
    for (const auto& v : strict)
        if (static_cast<int>(v.size()) != dim) throw InputError("strict normal has wrong dimension");

    // Variables: a(0..dim-1) boxed in [-1,1], then delta.
    std::vector<double> obj(static_cast<size_t>(dim) + 1, 0.0);
    obj.back() = 1.0;
    LinearProgram lp = LinearProgram::maximize(std::move(obj));
    for (int j = 0; j < dim; ++j) lp.bound(j, -1.0, 1.0);
    for (const auto& p : nonstrict) {
        std::vector<double> row(p.begin(), p.end());
        row.push_back(0.0);
        lp.subject_to(std::move(row), Relation::LessEq, 0.0);
    }
    for (const auto& q : strict) {
        std::vector<double> row(q.begin(), q.end());
        row.push_back(-1.0);
        lp.subject_to(std::move(row), Relation::GreaterEq, 0.0);
    }
    LPResult r = solve_lp(lp, tol);
    if (r.status != LPStatus::Optimal)
        throw SolverFailure("margin LP did not solve to optimality");
    MarginResult out;
    out.margin = r.value;
    out.witness.assign(r.solution.begin(), r.solution.begin() + dim);
    return out;
}

}  // namespace dcgame
