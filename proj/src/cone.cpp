#include "dcgame/cone.hpp"

#include <algorithm>
#include <cmath>

#include "dcgame/errors.hpp"
#include "dcgame/lp.hpp"

namespace dcgame {

Portfolio::Portfolio(Alphabet a, std::vector<double> v) : alphabet(std::move(a)), payoffs(std::move(v)) {
    if (static_cast<int>(payoffs.size()) != alphabet.size())
        throw InputError("portfolio length does not match alphabet");
    for (double x : payoffs)
        if (!std::isfinite(x)) throw InputError("portfolio entries must be finite");
}

Normal::Normal(std::vector<double> raw) : w_(std::move(raw)) {
    if (w_.empty()) throw InputError("normal must be nonempty");
    double sum = 0.0;
    for (double x : w_) {
        if (!std::isfinite(x) || x < 0.0) throw InputError("normal weights must be nonnegative");
        sum += x;
    }
    if (sum <= 0.0) throw InputError("normal must not be the zero vector");
    for (double& x : w_) x /= sum;
}

Normal Normal::indicator(int index, int dim) {
    std::vector<double> w(static_cast<size_t>(dim), 0.0);
    w.at(static_cast<size_t>(index)) = 1.0;
    return Normal(std::move(w));
}

double dot(const Normal& p, std::span<const double> a) {
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) s += p[i] * a[static_cast<size_t>(i)];
    return s;
}

DCCone::DCCone(Alphabet alphabet, std::vector<Cell> cells)
    : alphabet_(std::move(alphabet)), cells_(std::move(cells)) {
    for (const auto& c : cells_)
        for (const auto& p : c.normals)
            if (p.size() != alphabet_.size())
                throw InputError("cell normal does not match the cone alphabet");
}

DCCone DCCone::empty(Alphabet a) { return DCCone(std::move(a), {}); }

DCCone DCCone::full(Alphabet a) { return DCCone(std::move(a), {Cell{}}); }

DCCone DCCone::halfspace(Alphabet a, Normal p) {
    if (p.size() != a.size()) throw InputError("halfspace normal does not match alphabet");
    return DCCone(std::move(a), {Cell{{std::move(p)}}});
}

DCCone DCCone::nonpositive(Alphabet a) {
    Cell c;
    for (int y = 0; y < a.size(); ++y) c.normals.push_back(Normal::indicator(y, a.size()));
    return DCCone(std::move(a), {std::move(c)});
}

DCCone DCCone::noiseless(Alphabet a) {
    std::vector<Cell> cells;
    for (int y = 0; y < a.size(); ++y) cells.push_back(Cell{{Normal::indicator(y, a.size())}});
    return DCCone(std::move(a), std::move(cells));
}

DCCone DCCone::adversarial_cell(Alphabet a, const std::vector<int>& symbols) {
    Cell c;
    for (int y : symbols) {
        if (y < 0 || y >= a.size()) throw InputError("adversarial cell symbol out of range");
        c.normals.push_back(Normal::indicator(y, a.size()));
    }
    return DCCone(std::move(a), {std::move(c)});
}

DCCone DCCone::from_generators(Alphabet a, const std::vector<Portfolio>& generators) {
    std::vector<Cell> cells;
    const int d = a.size();
    for (const auto& g : generators) {
        if (g.alphabet != a) throw InputError("generator alphabet mismatch");
        // Eliminate gamma from {a : exists gamma >= 0, a <= gamma g}.
        std::vector<int> pos, neg, zero;
        for (int y = 0; y < d; ++y) {
            const double v = g.payoffs[static_cast<size_t>(y)];
            if (v > 0) pos.push_back(y);
            else if (v < 0) neg.push_back(y);
            else zero.push_back(y);
        }
        if (neg.empty() && zero.empty()) {
            cells.push_back(Cell{});  // strictly positive generator: arbitrage, full cell
            continue;
        }
        Cell c;
        for (int y : zero) c.normals.push_back(Normal::indicator(y, d));
        for (int ym : neg) c.normals.push_back(Normal::indicator(ym, d));
        for (int yp : pos) {
            for (int ym : neg) {
                std::vector<double> w(static_cast<size_t>(d), 0.0);
                w[static_cast<size_t>(ym)] = g.payoffs[static_cast<size_t>(yp)];
                w[static_cast<size_t>(yp)] = -g.payoffs[static_cast<size_t>(ym)];
                c.normals.push_back(Normal(std::move(w)));
            }
        }
        cells.push_back(std::move(c));
    }
    return DCCone(std::move(a), std::move(cells));
}

bool DCCone::has_full_cell() const {
    return std::any_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.is_full(); });
}

ConeKernel::ConeKernel(Alphabet in, std::vector<DCCone> c) : inputs(std::move(in)), cones(std::move(c)) {
    if (static_cast<int>(cones.size()) != inputs.size())
        throw InputError("kernel must map every input symbol");
    for (const auto& cone : cones)
        if (cone.alphabet() != cones.front().alphabet())
            throw InputError("kernel cones must share one output alphabet");
}

const Alphabet& ConeKernel::outputs() const {
    if (cones.empty()) throw InputError("empty kernel");
    return cones.front().alphabet();
}

bool contains_portfolio(const DCCone& cone, const Portfolio& s, double tol) {
    if (s.alphabet != cone.alphabet()) throw InputError("portfolio alphabet mismatch");
    double scale = 1.0;
    for (double x : s.payoffs) scale = std::max(scale, std::fabs(x));
    const double slack = tol * scale;
    for (const auto& cell : cone.cells()) {
        bool ok = true;
        for (const auto& p : cell.normals) {
            if (dot(p, s.payoffs) > slack) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

DCCone unite(const DCCone& a, const DCCone& b) {
    if (a.alphabet() != b.alphabet()) throw InputError("union requires equal alphabets");
    std::vector<Cell> cells = a.cells();
    cells.insert(cells.end(), b.cells().begin(), b.cells().end());
    return DCCone(a.alphabet(), std::move(cells));
}

DCCone intersect(const DCCone& a, const DCCone& b) {
    if (a.alphabet() != b.alphabet()) throw InputError("intersection requires equal alphabets");
    std::vector<Cell> cells;
    for (const auto& ca : a.cells()) {
        for (const auto& cb : b.cells()) {
            Cell c = ca;
            c.normals.insert(c.normals.end(), cb.normals.begin(), cb.normals.end());
            cells.push_back(std::move(c));
        }
    }
    return DCCone(a.alphabet(), std::move(cells));
}

DCCone disjoint_sum(const DCCone& a, const DCCone& b) {
    bool collide = false;
    for (const auto& s : b.alphabet().symbols())
        if (a.alphabet().find(s)) { collide = true; break; }
    std::vector<std::string> labels;
    for (const auto& s : a.alphabet().symbols()) labels.push_back(collide ? "1:" + s : s);
    for (const auto& s : b.alphabet().symbols()) labels.push_back(collide ? "2:" + s : s);
    Alphabet merged(std::move(labels));
    const int da = a.alphabet().size();
    const int d = merged.size();
    std::vector<Cell> cells;
    auto embed = [&](const Cell& c, int offset) {
        Cell out;
        for (const auto& p : c.normals) {
            std::vector<double> w(static_cast<size_t>(d), 0.0);
            for (int i = 0; i < p.size(); ++i) w[static_cast<size_t>(offset + i)] = p[i];
            out.normals.push_back(Normal(std::move(w)));
        }
        return out;
    };
    for (const auto& c : a.cells()) cells.push_back(embed(c, 0));
    for (const auto& c : b.cells()) cells.push_back(embed(c, da));
    return DCCone(std::move(merged), std::move(cells));
}

namespace {

std::vector<std::vector<double>> raw_normals(const Cell& c) {
    std::vector<std::vector<double>> out;
    out.reserve(c.normals.size());
    for (const auto& p : c.normals) out.push_back(p.weights());
    return out;
}

bool same_normal(const Normal& a, const Normal& b) {
    for (int i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > 1e-12) return false;
    return true;
}

// normal q is implied by the cell's other halfspaces iff cell subseteq q°,
// i.e. the margin of q against the cell is <= tol (Farkas).
Cell prune_cell_normals(const Cell& cell, double tol) {
    Cell out;
    // exact dedupe first
    for (const auto& p : cell.normals) {
        bool dup = false;
        for (const auto& q : out.normals)
            if (same_normal(p, q)) { dup = true; break; }
        if (!dup) out.normals.push_back(p);
    }
    if (out.normals.size() <= 1) return out;
    std::vector<bool> keep(out.normals.size(), true);
    for (size_t j = 0; j < out.normals.size(); ++j) {
        std::vector<std::vector<double>> rest;
        for (size_t k = 0; k < out.normals.size(); ++k)
            if (k != j && keep[k]) rest.push_back(out.normals[k].weights());
        if (rest.empty()) continue;
        MarginResult m = max_margin_feasibility(rest, {out.normals[j].weights()},
                                                out.normals[j].size(), tol);
        if (m.margin <= tol) keep[j] = false;
    }
    Cell kept;
    for (size_t j = 0; j < out.normals.size(); ++j)
        if (keep[j]) kept.normals.push_back(out.normals[j]);
    return kept;
}

// cell(S) subseteq cell(T) iff every halfspace of T is implied by S.
bool cell_contained(const Cell& s, const Cell& t, double tol) {
    if (t.is_full()) return true;
    if (s.is_full()) return false;
    for (const auto& q : t.normals) {
        MarginResult m = max_margin_feasibility(raw_normals(s), {q.weights()}, q.size(), tol);
        if (m.margin > tol) return false;
    }
    return true;
}

bool normal_set_subset(const Cell& sub, const Cell& super) {
    for (const auto& p : sub.normals) {
        bool found = false;
        for (const auto& q : super.normals)
            if (same_normal(p, q)) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

std::vector<Cell> prune_cells(std::vector<Cell> cells, double tol) {
    for (auto& c : cells) {
        c = prune_cell_normals(c, tol);
        std::sort(c.normals.begin(), c.normals.end(),
                  [](const Normal& x, const Normal& y) { return x.weights() < y.weights(); });
    }
    // Exact duplicates first, then subset containment (a superset of
    // halfspaces cuts a smaller cell), then the LP test for the rest.
    std::vector<bool> keep(cells.size(), true);
    for (size_t i = 0; i < cells.size(); ++i) {
        if (!keep[i]) continue;
        for (size_t j = 0; j < i; ++j) {
            if (!keep[j]) continue;
            if (normal_set_subset(cells[j].normals.size() <= cells[i].normals.size() ? cells[j]
                                                                                     : cells[i],
                                  cells[j].normals.size() <= cells[i].normals.size() ? cells[i]
                                                                                     : cells[j])) {
                // the cell with more halfspaces is contained in the other
                if (cells[i].normals.size() >= cells[j].normals.size()) keep[i] = false;
                else keep[j] = false;
                if (!keep[i]) break;
            }
        }
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        if (!keep[i]) continue;
        for (size_t j = 0; j < cells.size(); ++j) {
            if (i == j || !keep[j] || !keep[i]) continue;
            if (cell_contained(cells[i], cells[j], tol)) {
                // containment both ways: drop the later index
                if (j < i && cell_contained(cells[j], cells[i], tol)) continue;
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Cell> out;
    for (size_t i = 0; i < cells.size(); ++i)
        if (keep[i]) out.push_back(std::move(cells[i]));
    return out;
}

}  // namespace

DCCone prune(const DCCone& a, double tol) {
    return DCCone(a.alphabet(), prune_cells(a.cells(), tol));
}

DCCone dual(const DCCone& a, double tol) {
    // (U_i ^_j p_ij°)^dual = U_{sigma} ^_i p_{i,sigma(i)}°: distribute the
    // intersection over the unions, pruning after every factor to keep the
    // cell count down. A full input cell makes the dual empty; no input cells
    // make it full.
    std::vector<Cell> partial{Cell{}};
    for (const auto& cell : a.cells()) {
        std::vector<Cell> next;
        for (const auto& s : partial) {
            for (const auto& p : cell.normals) {
                Cell c = s;
                c.normals.push_back(p);
                next.push_back(std::move(c));
            }
        }
        partial = prune_cells(std::move(next), tol);
        if (partial.empty()) break;
    }
    return DCCone(a.alphabet(), std::move(partial));
}

SymbolMap::SymbolMap(Alphabet src, Alphabet tgt, std::vector<int> img)
    : source(std::move(src)), target(std::move(tgt)), image(std::move(img)) {
    if (static_cast<int>(image.size()) != source.size())
        throw InputError("map must be defined on every symbol");
    for (int z : image)
        if (z < 0 || z >= target.size()) throw InputError("map image out of range");
}

DCCone pushforward(const DCCone& a, const SymbolMap& f) {
    if (f.source != a.alphabet()) throw InputError("pushforward map domain mismatch");
    const int dz = f.target.size();
    std::vector<Cell> cells;
    for (const auto& c : a.cells()) {
        Cell out;
        for (const auto& p : c.normals) {
            std::vector<double> w(static_cast<size_t>(dz), 0.0);
            for (int y = 0; y < p.size(); ++y) w[static_cast<size_t>(f(y))] += p[y];
            out.normals.push_back(Normal(std::move(w)));
        }
        cells.push_back(std::move(out));
    }
    return DCCone(f.target, std::move(cells));
}

DCCone minplus(const DCCone& a, const DCCone& b, double lambda) {
    if (a.alphabet() != b.alphabet()) throw InputError("min-plus requires equal alphabets");
    if (lambda < 0.0 || lambda > 1.0) throw InputError("lambda must lie in [0,1]");
    if (a.is_empty_cone() || b.is_empty_cone()) return DCCone::empty(a.alphabet());
    if (lambda == 0.0) return a;
    if (lambda == 1.0) return b;
    const int d = a.alphabet().size();
    std::vector<Cell> cells;
    for (const auto& ca : a.cells()) {
        for (const auto& cb : b.cells()) {
            // A full partner lets the t-shift escape to infinity on its
            // branch, which makes the pair unconstrained.
            if (ca.is_full() || cb.is_full()) {
                cells.push_back(Cell{});
                continue;
            }
            Cell c;
            for (const auto& p : ca.normals) {
                for (const auto& q : cb.normals) {
                    std::vector<double> w(static_cast<size_t>(d), 0.0);
                    for (int y = 0; y < d; ++y) w[static_cast<size_t>(y)] = (1.0 - lambda) * p[y] + lambda * q[y];
                    c.normals.push_back(Normal(std::move(w)));
                }
            }
            cells.push_back(std::move(c));
        }
    }
    return DCCone(a.alphabet(), std::move(cells));
}

DCCone robustify(const DCCone& a, double eps) {
    return minplus(a, DCCone::nonpositive(a.alphabet()), eps);
}

}  // namespace dcgame
