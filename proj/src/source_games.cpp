#include "dcgame/source_games.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "dcgame/errors.hpp"
#include "dcgame/lp.hpp"

namespace dcgame {

std::span<const double> SourceStrategy::portfolio(int i, std::uint64_t prefix_rank) const {
    const auto& level = policy.at(static_cast<size_t>(i));
    const size_t nx = static_cast<size_t>(source.size());
    return {level.data() + prefix_rank * nx, nx};
}

void SourceStrategy::validate() const {
    if (L < 1 || n < 0) throw InputError("source strategy needs L >= 1 and n >= 0");
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(source.size()), n);
    if (encoder.size() != leaves) throw InputError("encoder must be total on X^n");
    for (int m : encoder)
        if (m < 0 || m >= L) throw InputError("encoder value out of range");
    if (static_cast<int>(decoder.size()) != L) throw InputError("decoder must cover every index");
    for (const auto& seq : decoder) {
        if (static_cast<int>(seq.size()) != n) throw InputError("decoded sequence length mismatch");
        for (int x : seq)
            if (x < 0 || x >= source.size()) throw InputError("decoded symbol out of range");
    }
    if (static_cast<int>(policy.size()) != n) throw InputError("policy must cover every step");
    std::uint64_t prefixes = 1;
    for (int i = 0; i < n; ++i) {
        if (policy[static_cast<size_t>(i)].size() != prefixes * static_cast<std::uint64_t>(source.size()))
            throw InputError("policy level has the wrong prefix count");
        prefixes *= static_cast<std::uint64_t>(source.size());
    }
}

VerifyReport verify_source_game(const SourceGameSpec& spec, const SourceStrategy& strategy,
                                double tol) {
    strategy.validate();
    if (strategy.n != spec.n || strategy.L != spec.L)
        throw InputError("strategy does not match the game parameters");
    if (strategy.source != spec.cone.alphabet())
        throw InputError("strategy alphabet does not match the cone");
    if (spec.eps <= 0.0 || spec.eps >= 1.0) throw InputError("eps must lie in (0,1)");
    const int nx = strategy.source.size();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(nx), spec.n);
    if (leaves > spec.node_cap) throw ResourceLimit("verification tree exceeds the node cap");

    VerifyReport rep;
    rep.min_payoff = std::numeric_limits<double>::infinity();
    const double floor = -spec.eps - tol;
    std::vector<int> path(static_cast<size_t>(spec.n), 0);
    std::function<void(int, std::uint64_t, double)> walk = [&](int i, std::uint64_t rank,
                                                               double sum) {
        ++rep.nodes;
        if (i == spec.n) {
            const int m = strategy.encoder[static_cast<size_t>(rank)];
            const auto& xhat = strategy.decoder[static_cast<size_t>(m)];
            const bool err = !std::equal(xhat.begin(), xhat.end(), path.begin());
            const double payoff = sum - (err ? 1.0 : 0.0);
            if (payoff < rep.min_payoff) {
                rep.min_payoff = payoff;
                rep.worst_message = m;
                rep.worst_path = path;
            }
            return;
        }
        std::span<const double> w = strategy.portfolio(i, rank);
        Portfolio pf(strategy.source, std::vector<double>(w.begin(), w.end()));
        if (!contains_portfolio(spec.cone, pf, tol)) {
            if (rep.violations.size() < 16) {
                MembershipViolation v;
                v.message = 0;
                v.step = i;
                v.prefix.assign(path.begin(), path.begin() + i);
                v.detail = "portfolio outside the source cone";
                rep.violations.push_back(std::move(v));
            } else {
                return;
            }
        }
        for (int x = 0; x < nx; ++x) {
            path[static_cast<size_t>(i)] = x;
            walk(i + 1, rank * static_cast<std::uint64_t>(nx) + static_cast<std::uint64_t>(x),
                 sum + w[static_cast<size_t>(x)]);
        }
    };
    walk(0, 0, 0.0);
    rep.win = rep.violations.empty() && rep.min_payoff >= floor;
    return rep;
}

double shannon_entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) {
        if (v <= 0.0) continue;
        h -= v * std::log2(v);
    }
    return h;
}

MaxEntropyResult max_entropy_under(std::span<const double> a, double threshold) {
    const size_t d = a.size();
    if (d == 0) throw InputError("empty payoff vector");
    MaxEntropyResult out;
    double amin = a[0], ua = 0.0;
    for (double v : a) {
        amin = std::min(amin, v);
        ua += v;
    }
    ua /= static_cast<double>(d);
    if (ua <= threshold) {  // uniform (global max) already feasible
        out.value = std::log2(static_cast<double>(d));
        out.argmax.assign(d, 1.0 / static_cast<double>(d));
        return out;
    }
    if (amin > threshold + 1e-15) {
        out.feasible = false;
        out.value = -std::numeric_limits<double>::infinity();
        return out;
    }
    if (amin > threshold - 1e-12) {
        // constraint pins the support to the argmin symbols
        std::vector<double> p(d, 0.0);
        int count = 0;
        for (size_t i = 0; i < d; ++i)
            if (a[i] <= amin + 1e-15) {
                p[i] = 1.0;
                ++count;
            }
        for (double& v : p) v /= count;
        out.argmax = p;
        out.value = std::log2(static_cast<double>(count));
        return out;
    }
    // Entropy maximizer under an active linear constraint is a Gibbs tilt
    // p_nu ∝ 2^{-nu a}; <p_nu, a> decreases from the uniform mean to ~amin.
    auto tilt = [&](double nu) {
        std::vector<double> p(d);
        double z = 0.0;
        for (size_t i = 0; i < d; ++i) {
            p[i] = std::exp2(-nu * (a[i] - amin));
            z += p[i];
        }
        for (double& v : p) v /= z;
        return p;
    };
    auto constraint = [&](double nu) {
        std::vector<double> p = tilt(nu);
        double s = 0.0;
        for (size_t i = 0; i < d; ++i) s += p[i] * a[i];
        return s;
    };
    double hi = 1.0;
    int guard = 0;
    while (constraint(hi) > threshold) {
        hi *= 2.0;
        if (++guard > 200) break;
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (constraint(mid) > threshold) lo = mid; else hi = mid;
    }
    out.argmax = tilt(hi);
    out.value = shannon_entropy_bits(out.argmax);
    return out;
}

EntropyResult entropy_generator_form(const Alphabet& alphabet,
                                     const std::vector<Portfolio>& generators) {
    EntropyResult res;
    res.method = "generator_form";
    if (generators.empty()) {  // dccone of nothing: the empty cone
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : generators) {
        if (g.alphabet != alphabet) throw InputError("generator alphabet mismatch");
        MaxEntropyResult m = max_entropy_under(g.payoffs, 0.0);
        best = std::min(best, m.value);
    }
    res.value = best;
    return res;
}

EntropyResult entropy_halfspace_closed_form(const DCCone& a) {
    EntropyResult res;
    res.method = "halfspace_closed_form";
    if (a.is_empty_cone()) {
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    if (a.cells().size() != 1 || a.cells().front().normals.size() != 1) {
        if (a.has_full_cell() && a.cells().size() == 1) {
            res.value = -std::numeric_limits<double>::infinity();
            return res;
        }
        throw InputError("closed form needs a single-halfspace cone");
    }
    res.value = shannon_entropy_bits(a.cells().front().normals.front().weights());
    return res;
}

EntropyResult entropy_search_upper_bound(const DCCone& a, int samples, unsigned seed, double tol) {
    EntropyResult res;
    res.method = "search_upper_bound";
    res.certified = false;
    if (a.is_empty_cone()) {
        res.value = std::numeric_limits<double>::infinity();
        res.certified = true;
        return res;
    }
    if (a.has_full_cell()) {
        res.value = -std::numeric_limits<double>::infinity();
        res.certified = true;
        return res;
    }
    const int d = a.alphabet().size();
    double best = std::log2(static_cast<double>(d));  // the zero portfolio's bound
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const auto& cell : a.cells()) {
        for (int s = 0; s < samples; ++s) {
            std::vector<double> obj(static_cast<size_t>(d));
            for (double& x : obj) x = gauss(rng);
            LinearProgram lp = LinearProgram::maximize(obj);
            for (int y = 0; y < d; ++y) lp.bound(y, -1.0, 1.0);
            for (const auto& p : cell.normals) {
                std::vector<double> row(p.weights().begin(), p.weights().end());
                lp.subject_to(std::move(row), Relation::LessEq, 0.0);
            }
            LPResult lr = solve_lp(lp, tol);
            if (lr.status != LPStatus::Optimal) continue;
            MaxEntropyResult m = max_entropy_under(lr.solution, 0.0);
            best = std::min(best, m.value);
        }
    }
    res.value = best;
    return res;
}

SourceSynthesis synthesize_source_strategy(const Normal& p, const Alphabet& source,
                                           const std::vector<std::vector<int>>& codewords,
                                           int n, double tol) {
    if (p.size() != source.size()) throw InputError("distribution does not match the alphabet");
    if (n < 1) throw InputError("n must be >= 1");
    const int nx = source.size();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(nx), n);
    const int L = std::max<int>(1, static_cast<int>(codewords.size()));

    // canonical encoder: exact match -> index, otherwise 0
    std::vector<int> encoder(leaves, 0);
    for (size_t m = 0; m < codewords.size(); ++m) {
        const auto& w = codewords[m];
        if (static_cast<int>(w.size()) != n) throw InputError("codeword length mismatch");
        encoder[rank_sequence(w, nx)] = static_cast<int>(m);
    }
    std::vector<std::vector<int>> decoder = codewords;
    if (decoder.empty()) decoder.push_back(std::vector<int>(static_cast<size_t>(n), 0));

    // error probability per prefix under iid p
    std::vector<std::vector<double>> pe(static_cast<size_t>(n) + 1);
    pe[static_cast<size_t>(n)].resize(leaves);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, n, nx);
        const auto& xhat = decoder[static_cast<size_t>(encoder[r])];
        pe[static_cast<size_t>(n)][r] = std::equal(xhat.begin(), xhat.end(), seq.begin()) ? 0.0 : 1.0;
    }
    for (int i = n - 1; i >= 0; --i) {
        const std::uint64_t width = checked_pow(static_cast<std::uint64_t>(nx), i);
        pe[static_cast<size_t>(i)].resize(width);
        for (std::uint64_t r = 0; r < width; ++r) {
            double s = 0.0;
            for (int x = 0; x < nx; ++x)
                s += p[x] * pe[static_cast<size_t>(i) + 1]
                            [r * static_cast<std::uint64_t>(nx) + static_cast<std::uint64_t>(x)];
            pe[static_cast<size_t>(i)][r] = s;
        }
    }

    SourceSynthesis out;
    out.error_probability = pe[0][0];
    SourceStrategy& st = out.strategy;
    st.source = source;
    st.n = n;
    st.L = L;
    st.encoder = std::move(encoder);
    st.decoder = std::move(decoder);
    st.policy.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& parent = pe[static_cast<size_t>(i)];
        const auto& child = pe[static_cast<size_t>(i) + 1];
        auto& level = st.policy[static_cast<size_t>(i)];
        level.resize(parent.size() * static_cast<size_t>(nx));
        for (size_t r = 0; r < parent.size(); ++r) {
            double drift = 0.0;
            for (int x = 0; x < nx; ++x) {
                const double w = child[r * static_cast<size_t>(nx) + static_cast<size_t>(x)] - parent[r];
                level[r * static_cast<size_t>(nx) + static_cast<size_t>(x)] = w;
                drift += p[x] * w;
            }
            if (std::fabs(drift) > std::max(tol, 1e-12))
                throw SynthesisError("martingale differences have nonzero drift", 0,
                                     sequence_label(unrank_sequence(r, i, nx), source));
        }
    }
    st.validate();
    return out;
}

SanovScheme sanov_scheme(const Portfolio& a, double gamma, double eps, int n, int L,
                         std::uint64_t enumeration_cap) {
    if (gamma <= 0.0) throw InputError("gamma must be positive");
    if (eps <= 0.0 || eps >= 1.0) throw InputError("eps must lie in (0,1)");
    if (n < 1) throw InputError("n must be >= 1");
    const Alphabet& xs = a.alphabet;
    const int nx = xs.size();

    SanovScheme out;
    out.threshold = (1.0 - eps) / gamma;
    const double cut = static_cast<double>(n) * out.threshold;
    const double cut_tol = 1e-12 * std::max(1.0, std::fabs(cut));

    // |S| by type classes: compositions of n over the alphabet.
    if (n > 62) throw ResourceLimit("type-class counting overflows past n = 62");
    unsigned __int128 count128 = 0;
    std::function<void(int, int, double, unsigned __int128)> types =
        [&](int sym, int left, double total, unsigned __int128 multinomial) {
            if (sym == nx - 1) {
                total += left * a.payoffs[static_cast<size_t>(sym)];
                if (total < cut - cut_tol) count128 += multinomial;
                return;
            }
            for (int c = 0; c <= left; ++c) {
                // multinomial *= C(left, c)
                unsigned __int128 coef = 1;
                for (int j = 0; j < c; ++j)
                    coef = coef * static_cast<unsigned __int128>(left - j) /
                           static_cast<unsigned __int128>(j + 1);
                types(sym + 1, left - c, total + c * a.payoffs[static_cast<size_t>(sym)],
                      multinomial * coef);
            }
        };
    types(0, n, 0.0, 1);
    if (count128 > std::numeric_limits<std::uint64_t>::max())
        throw ResourceLimit("type-class count overflows");
    out.count = static_cast<std::uint64_t>(count128);

    MaxEntropyResult ent = max_entropy_under(a.payoffs, out.threshold);
    out.exponent = ent.value;
    out.cardinality_bound =
        ent.feasible ? std::pow(static_cast<double>(n + 1), nx) * std::exp2(n * out.exponent) : 0.0;
    out.bound_ok = static_cast<double>(out.count) <= out.cardinality_bound;

    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(nx), n);
    if (leaves > enumeration_cap) return out;  // counting only; no explicit scheme

    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, n, nx);
        double total = 0.0;
        for (int x : seq) total += a.payoffs[static_cast<size_t>(x)];
        if (total < cut - cut_tol) out.listed.push_back(seq);
    }
    if (out.listed.size() != out.count)
        throw SolverFailure("type-class count disagrees with direct enumeration");

    const std::uint64_t min_L = std::max<std::uint64_t>(out.count, 1);
    const int want_L = L < 0 ? static_cast<int>(min_L) : L;
    if (want_L < 0 || static_cast<std::uint64_t>(want_L) < min_L)
        throw InputError("L must be at least |S| for the injective encoder");

    SourceStrategy& st = out.strategy;
    st.source = xs;
    st.n = n;
    st.L = want_L;
    st.encoder.assign(leaves, 0);
    for (size_t m = 0; m < out.listed.size(); ++m)
        st.encoder[rank_sequence(out.listed[m], nx)] = static_cast<int>(m);
    st.decoder.assign(static_cast<size_t>(want_L), std::vector<int>(static_cast<size_t>(n), 0));
    for (size_t m = 0; m < out.listed.size(); ++m) st.decoder[m] = out.listed[m];
    st.policy.resize(static_cast<size_t>(n));
    std::uint64_t prefixes = 1;
    for (int i = 0; i < n; ++i) {
        auto& level = st.policy[static_cast<size_t>(i)];
        level.resize(prefixes * static_cast<std::uint64_t>(nx));
        for (std::uint64_t r = 0; r < prefixes; ++r)
            for (int x = 0; x < nx; ++x)
                level[r * static_cast<std::uint64_t>(nx) + static_cast<std::uint64_t>(x)] =
                    gamma / n * a.payoffs[static_cast<size_t>(x)];
        prefixes *= static_cast<std::uint64_t>(nx);
    }
    st.validate();
    return out;
}

}  // namespace dcgame
