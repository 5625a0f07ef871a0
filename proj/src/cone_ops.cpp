#include <algorithm>
#include <cmath>
#include <limits>

#include "dcgame/cone.hpp"
#include "dcgame/errors.hpp"
#include "dcgame/lp.hpp"

namespace dcgame {

namespace {

constexpr std::uint64_t kExplicitCellCap = 5'000'000;

void require_single_normal_cells(const DCCone& a, const char* who) {
    for (const auto& c : a.cells())
        if (c.normals.size() != 1)
            throw InputError(std::string(who) +
                             ": explicit product needs single-normal cells; "
                             "use the lazy membership tests instead");
}

ConeKernel constant_kernel(const Alphabet& outcomes, const DCCone& b) {
    std::vector<DCCone> cones(static_cast<size_t>(outcomes.size()), b);
    return ConeKernel(outcomes, std::move(cones));
}

// Odometer over per-position option counts. Returns false when exhausted.
bool advance(std::vector<int>& sel, const std::vector<int>& counts) {
    for (size_t i = 0; i < sel.size(); ++i) {
        if (++sel[i] < counts[i]) return true;
        sel[i] = 0;
    }
    return false;
}

std::uint64_t selection_count(const std::vector<int>& counts, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (int c : counts) {
        if (c == 0) return 0;
        if (n > cap / static_cast<std::uint64_t>(c)) return cap + 1;
        n *= static_cast<std::uint64_t>(c);
    }
    return n;
}

}  // namespace

DCCone semidirect_explicit(const DCCone& a, const ConeKernel& f) {
    if (f.inputs != a.alphabet()) throw InputError("kernel domain must match first factor outcomes");
    require_single_normal_cells(a, "semidirect");
    for (const auto& cone : f.cones) require_single_normal_cells(cone, "semidirect");
    const Alphabet& zs = f.outputs();
    Alphabet product = Alphabet::tuple(a.alphabet(), zs);
    const int dy = a.alphabet().size();
    const int dz = zs.size();

    for (int y = 0; y < dy; ++y)
        if (f.at(y).is_empty_cone()) return DCCone::empty(product);
    if (a.is_empty_cone()) return DCCone::empty(product);

    std::vector<int> counts(static_cast<size_t>(dy));
    for (int y = 0; y < dy; ++y) counts[static_cast<size_t>(y)] = static_cast<int>(f.at(y).cells().size());

    std::vector<Cell> cells;
    for (const auto& ca : a.cells()) {
        const Normal& p = ca.normals.front();
        // Branch choices on zero-mass outcomes do not change the product
        // normal, so fix them at 0 to avoid duplicate cells.
        std::vector<int> eff = counts;
        for (int y = 0; y < dy; ++y)
            if (p[y] == 0.0) eff[static_cast<size_t>(y)] = 1;
        if (selection_count(eff, kExplicitCellCap) > kExplicitCellCap - cells.size())
            throw ResourceLimit("semidirect product cell count exceeds cap");
        std::vector<int> sel(static_cast<size_t>(dy), 0);
        do {
            std::vector<double> w(static_cast<size_t>(dy) * static_cast<size_t>(dz), 0.0);
            for (int y = 0; y < dy; ++y) {
                if (p[y] == 0.0) continue;
                const Normal& q = f.at(y).cells()[static_cast<size_t>(sel[static_cast<size_t>(y)])].normals.front();
                for (int z = 0; z < dz; ++z)
                    w[static_cast<size_t>(y * dz + z)] = p[y] * q[z];
            }
            cells.push_back(Cell{{Normal(std::move(w))}});
        } while (advance(sel, eff));
    }
    // exact dedupe of repeated product normals
    std::vector<Cell> unique;
    for (auto& c : cells) {
        bool dup = false;
        for (const auto& u : unique) {
            const auto& x = u.normals.front();
            const auto& y = c.normals.front();
            bool same = true;
            for (int i = 0; i < x.size(); ++i)
                if (std::fabs(x[i] - y[i]) > 1e-15) { same = false; break; }
            if (same) { dup = true; break; }
        }
        if (!dup) unique.push_back(std::move(c));
    }
    return DCCone(std::move(product), std::move(unique));
}

DCCone semidirect_explicit(const DCCone& a, const DCCone& b) {
    return semidirect_explicit(a, constant_kernel(a.alphabet(), b));
}

DCCone semidirect_chain(std::span<const DCCone> cones) {
    if (cones.empty()) throw InputError("semidirect chain needs at least one factor");
    DCCone acc = cones[0];
    for (size_t i = 1; i < cones.size(); ++i) acc = semidirect_explicit(acc, cones[i]);
    return acc;
}

namespace {

// Feasibility of: exists a, b free with s(y,z) <= a(y)+b(z), <p,a> <= 0 for
// p in ca, <q,b> <= 0 for q in cb.
bool product_pair_feasible(const Cell& ca, const Cell& cb, const Portfolio& s,
                           int dy, int dz, double tol) {
    const int nv = dy + dz;
    LinearProgram lp = LinearProgram::maximize(std::vector<double>(static_cast<size_t>(nv), 0.0));
    for (int y = 0; y < dy; ++y) {
        for (int z = 0; z < dz; ++z) {
            std::vector<double> row(static_cast<size_t>(nv), 0.0);
            row[static_cast<size_t>(y)] = 1.0;
            row[static_cast<size_t>(dy + z)] = 1.0;
            lp.subject_to(std::move(row), Relation::GreaterEq, s.payoffs[static_cast<size_t>(y * dz + z)]);
        }
    }
    for (const auto& p : ca.normals) {
        std::vector<double> row(static_cast<size_t>(nv), 0.0);
        for (int y = 0; y < dy; ++y) row[static_cast<size_t>(y)] = p[y];
        lp.subject_to(std::move(row), Relation::LessEq, 0.0);
    }
    for (const auto& q : cb.normals) {
        std::vector<double> row(static_cast<size_t>(nv), 0.0);
        for (int z = 0; z < dz; ++z) row[static_cast<size_t>(dy + z)] = q[z];
        lp.subject_to(std::move(row), Relation::LessEq, 0.0);
    }
    return solve_lp(lp, tol).status == LPStatus::Optimal;
}

}  // namespace

bool member_product(const DCCone& a, const DCCone& b, const Portfolio& s, const LazyOptions& opts) {
    const Alphabet product = Alphabet::tuple(a.alphabet(), b.alphabet());
    if (s.alphabet != product) throw InputError("portfolio must live on the product alphabet");
    const int dy = a.alphabet().size(), dz = b.alphabet().size();
    for (const auto& ca : a.cells())
        for (const auto& cb : b.cells())
            if (product_pair_feasible(ca, cb, s, dy, dz, opts.tol)) return true;
    return false;
}

bool member_semidirect(const DCCone& a, const ConeKernel& f, const Portfolio& s,
                       const LazyOptions& opts) {
    if (f.inputs != a.alphabet()) throw InputError("kernel domain must match first factor outcomes");
    const Alphabet product = Alphabet::tuple(a.alphabet(), f.outputs());
    if (s.alphabet != product) throw InputError("portfolio must live on the product alphabet");
    const int dy = a.alphabet().size();
    const int dz = f.outputs().size();
    for (int y = 0; y < dy; ++y)
        if (f.at(y).is_empty_cone()) return false;
    if (a.is_empty_cone()) return false;

    std::vector<int> counts(static_cast<size_t>(dy));
    for (int y = 0; y < dy; ++y) counts[static_cast<size_t>(y)] = static_cast<int>(f.at(y).cells().size());
    if (selection_count(counts, opts.selection_cap) > opts.selection_cap)
        throw ResourceLimit("semidirect branch selection count exceeds cap");

    // Variables: a(y) for y < dy, then f(y,z) row-major.
    const int nv = dy + dy * dz;
    for (const auto& ca : a.cells()) {
        std::vector<int> sel(static_cast<size_t>(dy), 0);
        do {
            LinearProgram lp = LinearProgram::maximize(std::vector<double>(static_cast<size_t>(nv), 0.0));
            for (int y = 0; y < dy; ++y) {
                for (int z = 0; z < dz; ++z) {
                    std::vector<double> row(static_cast<size_t>(nv), 0.0);
                    row[static_cast<size_t>(y)] = 1.0;
                    row[static_cast<size_t>(dy + y * dz + z)] = 1.0;
                    lp.subject_to(std::move(row), Relation::GreaterEq,
                                  s.payoffs[static_cast<size_t>(y * dz + z)]);
                }
            }
            for (const auto& p : ca.normals) {
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                for (int y = 0; y < dy; ++y) row[static_cast<size_t>(y)] = p[y];
                lp.subject_to(std::move(row), Relation::LessEq, 0.0);
            }
            for (int y = 0; y < dy; ++y) {
                const Cell& branch = f.at(y).cells()[static_cast<size_t>(sel[static_cast<size_t>(y)])];
                for (const auto& q : branch.normals) {
                    std::vector<double> row(static_cast<size_t>(nv), 0.0);
                    for (int z = 0; z < dz; ++z) row[static_cast<size_t>(dy + y * dz + z)] = q[z];
                    lp.subject_to(std::move(row), Relation::LessEq, 0.0);
                }
            }
            if (solve_lp(lp, opts.tol).status == LPStatus::Optimal) return true;
        } while (advance(sel, counts));
    }
    return false;
}

bool member_semidirect(const DCCone& a, const DCCone& b, const Portfolio& s,
                       const LazyOptions& opts) {
    return member_semidirect(a, constant_kernel(a.alphabet(), b), s, opts);
}

bool member_minkowski_sum(const DCCone& a, const DCCone& b, const Portfolio& s,
                          const LazyOptions& opts) {
    if (a.alphabet() != b.alphabet() || s.alphabet != a.alphabet())
        throw InputError("Minkowski sum requires one shared alphabet");
    const int d = a.alphabet().size();
    for (const auto& ca : a.cells()) {
        for (const auto& cb : b.cells()) {
            const int nv = 2 * d;
            LinearProgram lp = LinearProgram::maximize(std::vector<double>(static_cast<size_t>(nv), 0.0));
            for (int y = 0; y < d; ++y) {
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                row[static_cast<size_t>(y)] = 1.0;
                row[static_cast<size_t>(d + y)] = 1.0;
                lp.subject_to(std::move(row), Relation::GreaterEq, s.payoffs[static_cast<size_t>(y)]);
            }
            for (const auto& p : ca.normals) {
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                for (int y = 0; y < d; ++y) row[static_cast<size_t>(y)] = p[y];
                lp.subject_to(std::move(row), Relation::LessEq, 0.0);
            }
            for (const auto& q : cb.normals) {
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                for (int y = 0; y < d; ++y) row[static_cast<size_t>(d + y)] = q[y];
                lp.subject_to(std::move(row), Relation::LessEq, 0.0);
            }
            if (solve_lp(lp, opts.tol).status == LPStatus::Optimal) return true;
        }
    }
    return false;
}

bool member_implication(const DCCone& a, const DCCone& b, const Portfolio& s,
                        const LazyOptions& opts) {
    if (a.alphabet() != b.alphabet() || s.alphabet != a.alphabet())
        throw InputError("implication requires one shared alphabet");
    const int d = a.alphabet().size();
    // The implication cone always contains the nonpositive orthant (it is the
    // smallest nonempty downward-closed cone).
    double scale = 1.0;
    for (double x : s.payoffs) scale = std::max(scale, std::fabs(x));
    bool nonpos = true;
    for (double x : s.payoffs)
        if (x > opts.tol * scale) { nonpos = false; break; }
    if (nonpos) return true;

    if (a.is_empty_cone()) return contains_portfolio(b, s, opts.tol);
    // Otherwise: exists b' >= s with b' in B and b' outside A. "Outside A"
    // means strictly violating one normal from every cell of A.
    std::vector<int> counts;
    for (const auto& c : a.cells()) counts.push_back(static_cast<int>(c.normals.size()));
    if (selection_count(counts, opts.selection_cap) > opts.selection_cap)
        throw ResourceLimit("implication selection count exceeds cap");
    if (selection_count(counts, opts.selection_cap) == 0) return false;  // full cell in A

    const int nv = d + 1;  // b' then delta
    for (const auto& cb : b.cells()) {
        std::vector<int> sel(counts.size(), 0);
        do {
            std::vector<double> obj(static_cast<size_t>(nv), 0.0);
            obj.back() = 1.0;
            LinearProgram lp = LinearProgram::maximize(std::move(obj));
            for (int y = 0; y < d; ++y) {
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                row[static_cast<size_t>(y)] = 1.0;
                lp.subject_to(std::move(row), Relation::GreaterEq, s.payoffs[static_cast<size_t>(y)]);
            }
            for (const auto& q : cb.normals) {
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                for (int y = 0; y < d; ++y) row[static_cast<size_t>(y)] = q[y];
                lp.subject_to(std::move(row), Relation::LessEq, 0.0);
            }
            for (size_t i = 0; i < counts.size(); ++i) {
                const Normal& p = a.cells()[i].normals[static_cast<size_t>(sel[i])];
                std::vector<double> row(static_cast<size_t>(nv), 0.0);
                for (int y = 0; y < d; ++y) row[static_cast<size_t>(y)] = p[y];
                row.back() = -1.0;
                lp.subject_to(std::move(row), Relation::GreaterEq, 0.0);
            }
            LPResult r = solve_lp(lp, opts.tol);
            if (r.status == LPStatus::Unbounded) return true;
            if (r.status == LPStatus::Optimal && r.value > opts.tol) return true;
        } while (advance(sel, counts));
    }
    return false;
}

namespace {

// Searches for a point of the cell that strictly escapes every cell of the
// container. The search region is the cell intersected with the accumulated
// strict violations; margins only shrink as constraints accumulate, so
// covered regions are cut early, cells disjoint from the region are skipped
// without branching, and branching picks the cell with the fewest violable
// normals.
struct ContainSearch {
    const DCCone& a;
    const std::vector<std::vector<double>>& nonstrict;  // the contained cell
    int dim;
    double tol;
    std::uint64_t budget;
    double margin_seen = 0.0;
    std::optional<std::vector<double>> witness;

    bool uncovered(const std::vector<char>& remaining, std::vector<std::vector<double>>& strict) {
        if (budget-- == 0) throw ResourceLimit("containment selection count exceeds cap");
        if (!strict.empty()) {
            MarginResult m = max_margin_feasibility(nonstrict, strict, dim, tol);
            margin_seen = std::max(margin_seen, m.margin);
            if (m.margin <= tol) return false;  // region already covered
            witness = m.witness;
        }
        int best_cell = -1;
        std::vector<int> best_branches;
        std::vector<char> active = remaining;
        for (size_t i = 0; i < a.cells().size(); ++i) {
            if (!active[i]) continue;
            const Cell& cell = a.cells()[i];
            if (!strict.empty()) {
                // region disjoint from the cell: every region point already
                // escapes it
                std::vector<std::vector<double>> joint = nonstrict;
                for (const auto& p : cell.normals) joint.push_back(p.weights());
                if (max_margin_feasibility(joint, strict, dim, tol).margin <= tol) {
                    active[i] = 0;
                    continue;
                }
            }
            std::vector<int> branches;
            for (size_t j = 0; j < cell.normals.size(); ++j) {
                strict.push_back(cell.normals[j].weights());
                const double m = max_margin_feasibility(nonstrict, strict, dim, tol).margin;
                strict.pop_back();
                if (m > tol) branches.push_back(static_cast<int>(j));
            }
            if (branches.empty()) return false;  // the cell covers the region
            if (best_cell < 0 || branches.size() < best_branches.size()) {
                best_cell = static_cast<int>(i);
                best_branches = std::move(branches);
            }
        }
        // no active cell intersects the region: any region point is a witness
        if (best_cell < 0) return true;
        active[static_cast<size_t>(best_cell)] = 0;
        for (int j : best_branches) {
            strict.push_back(a.cells()[static_cast<size_t>(best_cell)]
                                 .normals[static_cast<size_t>(j)]
                                 .weights());
            const bool found = uncovered(active, strict);
            strict.pop_back();
            if (found) return true;
        }
        return false;
    }
};

ContainsResult contains_cone_impl(const DCCone& a, const DCCone& b, double tol,
                                  std::uint64_t selection_cap) {
    ContainsResult res;
    const int d = a.alphabet().size();
    for (const auto& cb : b.cells()) {
        std::vector<std::vector<double>> nonstrict;
        for (const auto& p : cb.normals) nonstrict.push_back(p.weights());
        ContainSearch search{a, nonstrict, d, tol, selection_cap};
        std::vector<std::vector<double>> strict;
        std::vector<char> remaining(a.cells().size(), 1);
        const bool found = search.uncovered(remaining, strict);
        res.max_margin = std::max(res.max_margin, search.margin_seen);
        if (found) {
            res.contained = false;
            if (search.witness) res.witness = Portfolio(a.alphabet(), *search.witness);
            return res;
        }
    }
    return res;
}

}  // namespace

ContainsResult contains_cone(const DCCone& a, const DCCone& b, double tol,
                             std::uint64_t selection_cap) {
    if (a.alphabet() != b.alphabet()) throw InputError("containment requires equal alphabets");
    ContainsResult res;
    if (b.is_empty_cone()) return res;
    if (a.is_empty_cone()) {
        res.contained = false;
        res.max_margin = std::numeric_limits<double>::infinity();
        res.witness = Portfolio(b.alphabet(),
                                std::vector<double>(static_cast<size_t>(b.alphabet().size()), 0.0));
        return res;
    }
    if (a.has_full_cell()) return res;

    // Large containers (products, intersections) carry many redundant cells;
    // shrinking the representation first keeps the selection search shallow.
    std::uint64_t product = 1;
    for (const auto& c : a.cells())
        product = std::min<std::uint64_t>(product * std::max<size_t>(c.normals.size(), 1), 1u << 20);
    if (a.cells().size() > 8 || product > 4096) {
        DCCone pruned = prune(a, tol);
        if (pruned.has_full_cell()) return res;
        return contains_cone_impl(pruned, b, tol, selection_cap);
    }
    return contains_cone_impl(a, b, tol, selection_cap);
}

bool equals_cone(const DCCone& a, const DCCone& b, double tol) {
    return contains_cone(a, b, tol).contained && contains_cone(b, a, tol).contained;
}

std::optional<std::vector<double>> noninformativeness_witness(const DCCone& a, double tol) {
    if (a.is_empty_cone() || a.has_full_cell()) return std::nullopt;
    // Non-informative iff some q in the probability simplex lies in the conic
    // hull of every cell's normals (then A subseteq q° by Farkas).
    const int d = a.alphabet().size();
    int nlam = 0;
    for (const auto& c : a.cells()) nlam += static_cast<int>(c.normals.size());
    const int nv = d + nlam;
    LinearProgram lp = LinearProgram::maximize(std::vector<double>(static_cast<size_t>(nv), 0.0));
    for (int y = 0; y < d; ++y) lp.bound(y, 0.0, 1.0);
    // mixture weights sum to 1 automatically (all vectors sum to 1)
    for (int j = 0; j < nlam; ++j) lp.bound(d + j, 0.0, 1.0);
    int off = d;
    for (const auto& c : a.cells()) {
        for (int y = 0; y < d; ++y) {
            std::vector<double> row(static_cast<size_t>(nv), 0.0);
            row[static_cast<size_t>(y)] = 1.0;
            for (size_t j = 0; j < c.normals.size(); ++j)
                row[static_cast<size_t>(off) + j] = -c.normals[j][y];
            lp.subject_to(std::move(row), Relation::Equal, 0.0);
        }
        off += static_cast<int>(c.normals.size());
    }
    std::vector<double> ones(static_cast<size_t>(nv), 0.0);
    for (int y = 0; y < d; ++y) ones[static_cast<size_t>(y)] = 1.0;
    lp.subject_to(std::move(ones), Relation::Equal, 1.0);
    LPResult r = solve_lp(lp, tol);
    if (r.status != LPStatus::Optimal) return std::nullopt;
    std::vector<double> q(r.solution.begin(), r.solution.begin() + d);
    double z = 0.0;
    for (double& v : q) {
        v = std::max(v, 0.0);
        z += v;
    }
    for (double& v : q) v /= z;
    return q;
}

bool is_informative(const DCCone& a, double tol) {
    if (a.is_empty_cone()) return false;  // degenerate: nothing to choose
    if (a.has_full_cell()) return true;
    return !noninformativeness_witness(a, tol).has_value();
}

std::optional<SymbolMap> deterministic_degrading_map(const DCCone& b, const DCCone& a, double tol,
                                                     std::uint64_t enumeration_cap) {
    const int dy = a.alphabet().size();
    const int dz = b.alphabet().size();
    if (checked_pow(static_cast<std::uint64_t>(dz), dy) > enumeration_cap)
        throw ResourceLimit("degradedness map enumeration exceeds cap");
    std::vector<int> img(static_cast<size_t>(dy), 0);
    std::vector<int> counts(static_cast<size_t>(dy), dz);
    do {
        SymbolMap f(a.alphabet(), b.alphabet(), img);
        if (contains_cone(pushforward(a, f), b, tol).contained) return f;
    } while (advance(img, counts));
    return std::nullopt;
}

bool deterministically_degraded(const DCCone& b, const DCCone& a, double tol,
                                std::uint64_t enumeration_cap) {
    return deterministic_degrading_map(b, a, tol, enumeration_cap).has_value();
}

bool nondeterministically_degraded(const DCCone& b, const DCCone& a, const ConeKernel& f,
                                   double tol) {
    if (f.outputs() != b.alphabet()) throw InputError("kernel output alphabet must match B");
    for (const auto& cone : f.cones)
        if (is_informative(cone, tol))
            throw InputError("degrading kernel must be pointwise non-informative");
    DCCone prod = semidirect_explicit(a, f);
    // pi2: (y,z) -> z
    const int dy = a.alphabet().size(), dz = b.alphabet().size();
    std::vector<int> img(static_cast<size_t>(dy) * static_cast<size_t>(dz));
    for (int y = 0; y < dy; ++y)
        for (int z = 0; z < dz; ++z) img[static_cast<size_t>(y * dz + z)] = z;
    SymbolMap pi2(prod.alphabet(), b.alphabet(), std::move(img));
    return contains_cone(pushforward(prod, pi2), b, tol).contained;
}

}  // namespace dcgame
