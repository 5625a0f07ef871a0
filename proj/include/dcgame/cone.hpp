#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcgame/alphabet.hpp"

namespace dcgame {

/// Payoff vector over an outcome alphabet.
struct Portfolio {
    Alphabet alphabet;
    std::vector<double> payoffs;

    Portfolio() = default;
    Portfolio(Alphabet a, std::vector<double> v);
};

/// Probability vector used as a halfspace normal. Weights are nonnegative and
/// normalized to sum 1 at construction.
class Normal {
public:
    Normal() = default;
    explicit Normal(std::vector<double> raw);
    static Normal indicator(int index, int dim);

    const std::vector<double>& weights() const { return w_; }
    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int i) const { return w_[static_cast<size_t>(i)]; }

private:
    std::vector<double> w_;
};

double dot(const Normal& p, std::span<const double> a);

/// Intersection of halfspaces {a : <p,a> <= 0} over a shared alphabet.
/// An empty normal set denotes the full payoff space.
struct Cell {
    std::vector<Normal> normals;

    bool is_full() const { return normals.empty(); }
};

/// Union of cells over a finite outcome alphabet: the universal
/// channel/requirement object. An empty cell list denotes the empty cone.
class DCCone {
public:
    DCCone() = default;
    DCCone(Alphabet alphabet, std::vector<Cell> cells);

    static DCCone empty(Alphabet a);
    static DCCone full(Alphabet a);
    static DCCone halfspace(Alphabet a, Normal p);
    static DCCone nonpositive(Alphabet a);
    static DCCone noiseless(Alphabet a);
    /// One cell with indicator normals on the listed symbols; full cell when
    /// the list is empty.
    static DCCone adversarial_cell(Alphabet a, const std::vector<int>& symbols);
    /// Union over generators g of {a : exists gamma >= 0 with a <= gamma g},
    /// each converted to a halfspace-intersection cell.
    static DCCone from_generators(Alphabet a, const std::vector<Portfolio>& generators);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Cell>& cells() const { return cells_; }
    bool is_empty_cone() const { return cells_.empty(); }
    bool has_full_cell() const;

private:
    Alphabet alphabet_;
    std::vector<Cell> cells_;
};

/// Map from each input symbol to a cone over a shared output alphabet.
struct ConeKernel {
    Alphabet inputs;
    std::vector<DCCone> cones;  // indexed by input symbol

    ConeKernel() = default;
    ConeKernel(Alphabet in, std::vector<DCCone> c);
    const DCCone& at(int x) const { return cones.at(static_cast<size_t>(x)); }
    const Alphabet& outputs() const;
};

// ---- membership and basic algebra ----

bool contains_portfolio(const DCCone& cone, const Portfolio& s, double tol = 1e-9);

DCCone unite(const DCCone& a, const DCCone& b);
DCCone intersect(const DCCone& a, const DCCone& b);
/// Sum channel over the disjoint union of the alphabets. Labels are kept when
/// already disjoint, otherwise tagged "1:" / "2:".
DCCone disjoint_sum(const DCCone& a, const DCCone& b);

/// Removes duplicate/implied normals within cells and cells contained in
/// other cells. Pure representation change; the denoted set is untouched.
DCCone prune(const DCCone& a, double tol = 1e-9);

/// Role-swap dual, computed structurally: one output cell per selection of a
/// single normal from each input cell, pruned.
DCCone dual(const DCCone& a, double tol = 1e-9);

/// Total relabeling map between outcome alphabets.
struct SymbolMap {
    Alphabet source;
    Alphabet target;
    std::vector<int> image;  // per source symbol index

    SymbolMap() = default;
    SymbolMap(Alphabet src, Alphabet tgt, std::vector<int> img);
    int operator()(int y) const { return image.at(static_cast<size_t>(y)); }
};

DCCone pushforward(const DCCone& a, const SymbolMap& f);

/// Min-plus combination: the cone-level analogue of mixing distributions with
/// weights (1-lambda, lambda).
DCCone minplus(const DCCone& a, const DCCone& b, double lambda);
/// minplus(a, nonpositive, eps): an eps-probability arbitrary-output corruption.
DCCone robustify(const DCCone& a, double eps);

// ---- products ----

/// Explicit semidirect product for cones whose cells all carry exactly one
/// normal. The second factor may vary with the first outcome (kernel form).
/// Throws InputError when a multi-normal cell is present; use the lazy
/// membership tests for those.
DCCone semidirect_explicit(const DCCone& a, const DCCone& b);
DCCone semidirect_explicit(const DCCone& a, const ConeKernel& f);
DCCone semidirect_chain(std::span<const DCCone> cones);

struct LazyOptions {
    double tol = 1e-9;
    std::uint64_t selection_cap = 2'000'000;
};

/// Membership in A (x) B: payoffs split as s(y,z) <= a(y) + b(z) with a, b
/// in the factors. Decided by cell-pair LPs.
bool member_product(const DCCone& a, const DCCone& b, const Portfolio& s,
                    const LazyOptions& opts = {});
/// Membership in the semidirect product with per-outcome branch choice.
bool member_semidirect(const DCCone& a, const DCCone& b, const Portfolio& s,
                       const LazyOptions& opts = {});
bool member_semidirect(const DCCone& a, const ConeKernel& f, const Portfolio& s,
                       const LazyOptions& opts = {});
/// Membership in the Minkowski sum A + B over a shared alphabet.
bool member_minkowski_sum(const DCCone& a, const DCCone& b, const Portfolio& s,
                          const LazyOptions& opts = {});
/// Membership in the implication cone A -> B (smallest cone whose union with
/// A covers B).
bool member_implication(const DCCone& a, const DCCone& b, const Portfolio& s,
                        const LazyOptions& opts = {});

// ---- comparisons ----

struct ContainsResult {
    bool contained = true;
    double max_margin = 0.0;
    std::optional<Portfolio> witness;  // in B but outside A when not contained
};

/// Decides B subseteq A by margin LPs over normal selections.
ContainsResult contains_cone(const DCCone& a, const DCCone& b, double tol = 1e-9,
                             std::uint64_t selection_cap = 2'000'000);
bool equals_cone(const DCCone& a, const DCCone& b, double tol = 1e-9);

/// True iff the convex hull of the cone is the whole payoff space. The empty
/// cone reports false (degenerate).
bool is_informative(const DCCone& a, double tol = 1e-9);

/// When the cone is non-informative, a prior q lying in the conic hull of
/// every cell's normals (so the whole cone sits inside q°). Empty otherwise.
std::optional<std::vector<double>> noninformativeness_witness(const DCCone& a, double tol = 1e-9);

/// B deterministically degraded w.r.t. A: some relabeling f of A's outcomes
/// has B subseteq f#A. Enumerates all |Z|^|Y| maps (capped).
bool deterministically_degraded(const DCCone& b, const DCCone& a, double tol = 1e-9,
                                std::uint64_t enumeration_cap = 2'000'000);
std::optional<SymbolMap> deterministic_degrading_map(const DCCone& b, const DCCone& a,
                                                     double tol = 1e-9,
                                                     std::uint64_t enumeration_cap = 2'000'000);

/// B nondeterministically degraded w.r.t. A for the supplied kernel F: checks
/// every F(y) is non-informative, then B subseteq pi2#(A |x F). Requires
/// single-normal cells in A and F.
bool nondeterministically_degraded(const DCCone& b, const DCCone& a, const ConeKernel& f,
                                   double tol = 1e-9);

}  // namespace dcgame
