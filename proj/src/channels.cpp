#include "dcgame/channels.hpp"

#include <algorithm>
#include <cmath>

#include "dcgame/errors.hpp"

namespace dcgame {

GameChannel::GameChannel(Alphabet in, std::vector<DCCone> c)
    : inputs(std::move(in)), cones(std::move(c)) {
    if (static_cast<int>(cones.size()) != inputs.size())
        throw InputError("channel must map every input symbol");
    for (const auto& cone : cones)
        if (cone.alphabet() != cones.front().alphabet())
            throw InputError("channel cones must share one output alphabet");
}

const Alphabet& GameChannel::outputs() const {
    if (cones.empty()) throw InputError("channel has no inputs");
    return cones.front().alphabet();
}

DCCone GameChannel::range_cone() const {
    DCCone acc = cones.front();
    for (size_t i = 1; i < cones.size(); ++i) acc = unite(acc, cones[i]);
    return acc;
}

DMCKernel::DMCKernel(Alphabet in, Alphabet out, std::vector<std::vector<double>> r)
    : inputs(std::move(in)), outputs(std::move(out)), rows(std::move(r)) {
    if (static_cast<int>(rows.size()) != inputs.size())
        throw InputError("DMC needs one row per input");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != outputs.size())
            throw InputError("DMC row length mismatch");
        double s = 0.0;
        for (double v : row) {
            if (v < 0.0 || !std::isfinite(v)) throw InputError("DMC rows must be nonnegative");
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-9) throw InputError("DMC rows must sum to 1");
    }
}

BipartiteGraph::BipartiteGraph(Alphabet in, Alphabet out, std::vector<std::pair<int, int>> e)
    : inputs(std::move(in)), outputs(std::move(out)), edges(std::move(e)) {
    for (auto [x, y] : edges)
        if (x < 0 || x >= inputs.size() || y < 0 || y >= outputs.size())
            throw InputError("graph edge references an unknown symbol");
}

bool BipartiteGraph::has_edge(int x, int y) const {
    return std::find(edges.begin(), edges.end(), std::make_pair(x, y)) != edges.end();
}

std::vector<int> BipartiteGraph::outputs_of(int x) const {
    std::vector<int> out;
    for (auto [a, b] : edges)
        if (a == x) out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AVCFKernel::AVCFKernel(Alphabet xs, Alphabet zs, Alphabet vs, Alphabet ys, std::vector<double> probs)
    : x(std::move(xs)), z(std::move(zs)), v(std::move(vs)), y(std::move(ys)), p(std::move(probs)) {
    const size_t expect = static_cast<size_t>(x.size()) * static_cast<size_t>(z.size()) *
                          static_cast<size_t>(v.size()) * static_cast<size_t>(y.size());
    if (p.size() != expect) throw InputError("AVCF kernel size mismatch");
    for (int xi = 0; xi < x.size(); ++xi)
        for (int zi = 0; zi < z.size(); ++zi)
            for (int vi = 0; vi < v.size(); ++vi) {
                double s = 0.0;
                for (double t : row(xi, zi, vi)) {
                    if (t < 0.0 || !std::isfinite(t)) throw InputError("AVCF rows must be nonnegative");
                    s += t;
                }
                if (std::fabs(s - 1.0) > 1e-9) throw InputError("AVCF rows must sum to 1");
            }
}

std::span<const double> AVCFKernel::row(int xi, int zi, int vi) const {
    const size_t base =
        ((static_cast<size_t>(xi) * static_cast<size_t>(z.size()) + static_cast<size_t>(zi)) *
             static_cast<size_t>(v.size()) +
         static_cast<size_t>(vi)) *
        static_cast<size_t>(y.size());
    return {p.data() + base, static_cast<size_t>(y.size())};
}

GameChannel channel_from_dmc(const DMCKernel& k) {
    std::vector<DCCone> cones;
    for (const auto& row : k.rows)
        cones.push_back(DCCone::halfspace(k.outputs, Normal(row)));
    return GameChannel(k.inputs, std::move(cones));
}

GameChannel channel_from_dmc_feedback(const DMCKernel& k) {
    std::vector<Cell> cells;
    for (const auto& row : k.rows) cells.push_back(Cell{{Normal(row)}});
    return GameChannel(Alphabet({"0"}), {DCCone(k.outputs, std::move(cells))});
}

GameChannel channel_from_graph(const BipartiteGraph& g) {
    std::vector<DCCone> cones;
    for (int x = 0; x < g.inputs.size(); ++x)
        cones.push_back(DCCone::adversarial_cell(g.outputs, g.outputs_of(x)));
    return GameChannel(g.inputs, std::move(cones));
}

GameChannel channel_from_graph_feedback(const BipartiteGraph& g) {
    std::vector<Cell> cells;
    for (int x = 0; x < g.inputs.size(); ++x) {
        Cell c;
        for (int y : g.outputs_of(x)) c.normals.push_back(Normal::indicator(y, g.outputs.size()));
        cells.push_back(std::move(c));
    }
    return GameChannel(Alphabet({"0"}), {DCCone(g.outputs, std::move(cells))});
}

GameChannel channel_from_avcf(const AVCFKernel& k) {
    std::vector<DCCone> cones;
    for (int xi = 0; xi < k.x.size(); ++xi) {
        std::vector<Cell> cells;
        for (int zi = 0; zi < k.z.size(); ++zi) {
            Cell c;
            for (int vi = 0; vi < k.v.size(); ++vi) {
                auto r = k.row(xi, zi, vi);
                c.normals.push_back(Normal(std::vector<double>(r.begin(), r.end())));
            }
            cells.push_back(std::move(c));
        }
        cones.push_back(DCCone(k.y, std::move(cells)));
    }
    return GameChannel(k.x, std::move(cones));
}

DMCKernel bsc_kernel(double beta) {
    if (beta <= 0.0 || beta >= 1.0) throw InputError("beta must lie in (0,1)");
    return DMCKernel(Alphabet::integers(2), Alphabet::integers(2),
                     {{1.0 - beta, beta}, {beta, 1.0 - beta}});
}

GameChannel bsc_channel(double beta) { return channel_from_dmc(bsc_kernel(beta)); }

GameChannel bsc_feedback_channel(double beta) {
    return channel_from_dmc_feedback(bsc_kernel(beta));
}

GameChannel erasure_channel(double p) {
    if (p <= 0.0 || p >= 1.0) throw InputError("erasure probability must lie in (0,1)");
    Alphabet outcomes({"delivered", "lost"});
    Portfolio g(outcomes, {-1.0, 1.0 / p - 1.0});
    return GameChannel(Alphabet({"0"}), {DCCone::from_generators(outcomes, {g})});
}

BipartiteGraph cycle_confusability_graph(int k) {
    if (k < 3) throw InputError("cycle graph needs at least 3 symbols");
    Alphabet a = Alphabet::integers(k);
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < k; ++x)
        for (int delta : {k - 1, 0, 1}) edges.emplace_back(x, (x + delta) % k);
    return BipartiteGraph(a, a, std::move(edges));
}

BipartiteGraph typewriter_graph(int k) {
    if (k < 2) throw InputError("typewriter graph needs at least 2 symbols");
    Alphabet a = Alphabet::integers(k);
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < k; ++x) {
        edges.emplace_back(x, x);
        edges.emplace_back(x, (x + 1) % k);
    }
    return BipartiteGraph(a, a, std::move(edges));
}

DCCone requirement_cone(int L, double eps) {
    if (L < 1) throw InputError("L must be >= 1");
    if (eps <= 0.0 || eps >= 1.0) throw InputError("eps must lie in (0,1)");
    Alphabet a = Alphabet::integers(L);
    std::vector<Portfolio> gens;
    for (int m = 0; m < L; ++m) {
        std::vector<double> g(static_cast<size_t>(L), 1.0 - eps);
        g[static_cast<size_t>(m)] = -eps;
        gens.emplace_back(a, std::move(g));
    }
    return DCCone::from_generators(std::move(a), gens);
}

GameChannel dual_channel(const GameChannel& t, double tol) {
    std::vector<DCCone> cones;
    for (const auto& c : t.cones) cones.push_back(dual(c, tol));
    return GameChannel(t.inputs, std::move(cones));
}

DCCone n_use_cone(const GameChannel& w, int n, NUseMode mode, const std::vector<int>* xs,
                  std::uint64_t cap) {
    if (n < 1) throw InputError("n must be >= 1");
    if (checked_pow(static_cast<std::uint64_t>(w.outputs().size()), n) > cap)
        throw ResourceLimit("n-use output alphabet exceeds cap");
    if (mode == NUseMode::FixedInput) {
        if (!xs || static_cast<int>(xs->size()) != n)
            throw InputError("fixed-input mode needs an input word of length n");
        std::vector<DCCone> chain;
        for (int x : *xs) chain.push_back(w.at(x));
        return semidirect_chain(chain);
    }
    if (checked_pow(static_cast<std::uint64_t>(w.inputs.size()), n) > cap)
        throw ResourceLimit("n-use input enumeration exceeds cap");
    std::vector<int> word(static_cast<size_t>(n), 0);
    std::optional<DCCone> acc;
    while (true) {
        std::vector<DCCone> chain;
        for (int x : word) chain.push_back(w.at(x));
        DCCone c = semidirect_chain(chain);
        acc = acc ? unite(*acc, c) : c;
        int i = n - 1;
        for (; i >= 0; --i) {
            if (++word[static_cast<size_t>(i)] < w.inputs.size()) break;
            word[static_cast<size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return *acc;
}

bool deterministically_degraded(const GameChannel& w, const GameChannel& v, double tol,
                                std::uint64_t enumeration_cap) {
    if (w.inputs != v.inputs) throw InputError("channels must share the input alphabet");
    const int dy = v.outputs().size();
    const int dz = w.outputs().size();
    if (checked_pow(static_cast<std::uint64_t>(dz), dy) > enumeration_cap)
        throw ResourceLimit("degradedness map enumeration exceeds cap");
    std::vector<int> img(static_cast<size_t>(dy), 0);
    while (true) {
        SymbolMap f(v.outputs(), w.outputs(), img);
        bool all = true;
        for (int x = 0; x < w.inputs.size() && all; ++x)
            all = contains_cone(pushforward(v.at(x), f), w.at(x), tol).contained;
        if (all) return true;
        int i = 0;
        for (; i < dy; ++i) {
            if (++img[static_cast<size_t>(i)] < dz) break;
            img[static_cast<size_t>(i)] = 0;
        }
        if (i == dy) return false;
    }
}

bool nondeterministically_degraded(const GameChannel& w, const GameChannel& v,
                                   const ConeKernel& f, double tol) {
    if (w.inputs != v.inputs) throw InputError("channels must share the input alphabet");
    for (int x = 0; x < w.inputs.size(); ++x)
        if (!nondeterministically_degraded(w.at(x), v.at(x), f, tol)) return false;
    return true;
}

AVCFKernel avcf_from_dmc(const DMCKernel& k, bool feedback) {
    Alphabet single({"0"});
    if (!feedback) {
        std::vector<double> p;
        for (const auto& row : k.rows) p.insert(p.end(), row.begin(), row.end());
        return AVCFKernel(k.inputs, single, single, k.outputs, std::move(p));
    }
    std::vector<double> p;
    for (const auto& row : k.rows) p.insert(p.end(), row.begin(), row.end());
    return AVCFKernel(single, k.inputs, single, k.outputs, std::move(p));
}

AVCFKernel avcf_from_graph(const BipartiteGraph& g, bool feedback) {
    Alphabet single({"0"});
    const int ny = g.outputs.size();
    auto rows_for = [&](int x) {
        const std::vector<int> outs = g.outputs_of(x);
        if (outs.empty())
            throw InputError("graph input with no outputs cannot be encoded as a kernel");
        std::vector<double> p;
        for (int v = 0; v < ny; ++v) {
            std::vector<double> row(static_cast<size_t>(ny), 0.0);
            const int target = g.has_edge(x, v) ? v : outs.front();
            row[static_cast<size_t>(target)] = 1.0;
            p.insert(p.end(), row.begin(), row.end());
        }
        return p;
    };
    std::vector<double> p;
    for (int x = 0; x < g.inputs.size(); ++x) {
        std::vector<double> rows = rows_for(x);
        p.insert(p.end(), rows.begin(), rows.end());
    }
    if (!feedback) return AVCFKernel(g.inputs, single, g.outputs, g.outputs, std::move(p));
    return AVCFKernel(single, g.inputs, g.outputs, g.outputs, std::move(p));
}

}  // namespace dcgame
