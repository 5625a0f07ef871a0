#pragma once

#include <string>
#include <vector>

#include "dcgame/cone.hpp"

namespace dcgame {

enum class CapacityMethod { Auto, BlahutArimoto, Minimax, OracleGrid };

struct CapacityResult {
    /// Bits. +/- infinity for the full / empty cone.
    double value = 0.0;
    Normal prior;                    // optimizing q (finite case)
    std::vector<Normal> posteriors;  // per-cell worst posterior at the prior
    std::string method;
    long iterations = 0;
    double gap = 0.0;  // final convergence diagnostic

    bool is_finite() const;
};

struct CapacityOptions {
    long max_iterations = 100000;
    double grid_step = 0.002;
    /// Floor applied to the prior during iteration only.
    double interior_floor = 1e-12;
};

/// Information capacity of a pricing DC cone, in bits.
///   - BlahutArimoto applies when every cell has a single normal (the cone is
///     a union of halfspaces; the normals act as channel rows).
///   - Minimax solves the convex prior-vs-posterior program directly and
///     works for any cell structure.
///   - OracleGrid scans a simplex grid (alphabet size <= 3 only) for
///     independent validation.
CapacityResult info_capacity(const DCCone& a, CapacityMethod method = CapacityMethod::Auto,
                             double tol = 1e-6, const CapacityOptions& opts = {});

/// max over cells of the minimum KL divergence from the cell's posterior hull
/// to q; the objective the capacity solvers minimize over q.
double capacity_objective(const DCCone& a, const std::vector<double>& q, double tol,
                          std::vector<Normal>* posteriors = nullptr);

/// log2 L - Hb(eps) - eps log2(L-1): the requirement cone's closed-form value.
double requirement_value(int L, double eps);

double binary_entropy(double eps);
double kl_divergence_bits(std::span<const double> p, std::span<const double> q);

/// min KL(p || q) over the halfspace {p in simplex : <p,a> <= 0}, solved by a
/// Gibbs-tilt bisection. Used as an independent oracle for the hull reduction.
struct HalfspaceProjection {
    double value;
    std::vector<double> p;
    bool feasible;
};
HalfspaceProjection kl_project_halfspace(std::span<const double> q, std::span<const double> a);

struct CapacityValidation {
    bool ok = true;
    /// Largest inner value reached by sampled portfolios minus the cell value
    /// (should be <= tol: no portfolio beats the hull reduction).
    double sample_excess = 0.0;
    /// Cell value minus the value achieved by the supporting portfolio built
    /// from the worst posterior (should be <= tol: the bound is attained).
    double support_shortfall = 0.0;
    double reconstruction_gap = 0.0;
};

/// Re-derives the reported value at the reported prior and cross-checks the
/// hull reduction against directly sampled cell portfolios.
CapacityValidation validate_capacity_reduction(const DCCone& a, const CapacityResult& r,
                                               int samples_per_cell, unsigned seed, double tol);

}  // namespace dcgame
