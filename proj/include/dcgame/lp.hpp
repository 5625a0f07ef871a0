#pragma once

#include <optional>
#include <vector>

namespace dcgame {

enum class Relation { LessEq, GreaterEq, Equal };
enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LinearConstraint {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

struct VariableBounds {
    double lower;
    double upper;
};

/// Dense LP in maximization form. Variables are free unless a finite box is
/// supplied per variable.
struct LinearProgram {
    int variable_count = 0;
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<std::optional<VariableBounds>> bounds;

    static LinearProgram maximize(std::vector<double> c);
    LinearProgram& subject_to(std::vector<double> row, Relation rel, double rhs);
    LinearProgram& bound(int var, double lo, double hi);
};

struct LPResult {
    LPStatus status = LPStatus::Optimal;
    double value = 0.0;
    std::vector<double> solution;
    /// Duals per constraint when optimal; Farkas certificate when infeasible.
    std::vector<double> certificate;
};

/// Two-phase dense simplex with Bland's rule. Deterministic for identical
/// inputs. Throws InputError on malformed dimensions and SolverFailure if the
/// iteration cap is hit.
LPResult solve_lp(const LinearProgram& lp, double tol = 1e-9);

struct MarginResult {
    double margin = 0.0;
    std::vector<double> witness;
};

/// Optimum of: maximize delta subject to <p,a> <= 0 for each nonstrict p,
/// <q,a> >= delta for each strict q, and -1 <= a(y) <= 1 per coordinate.
/// The witness attains the margin. The strict list must be nonempty.
MarginResult max_margin_feasibility(const std::vector<std::vector<double>>& nonstrict,
                                    const std::vector<std::vector<double>>& strict,
                                    int dim, double tol = 1e-9);

}  // namespace dcgame
