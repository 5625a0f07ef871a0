#include "dcgame/games.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dcgame/errors.hpp"

namespace dcgame {

std::span<const double> TeamStrategy::portfolio(int m, int i, std::uint64_t prefix_rank) const {
    const auto& level = policy.at(static_cast<size_t>(m)).at(static_cast<size_t>(i));
    const size_t ny = static_cast<size_t>(outputs.size());
    return {level.data() + prefix_rank * ny, ny};
}

void TeamStrategy::validate() const {
    if (L < 1 || n < 0) throw InputError("strategy needs L >= 1 and n >= 0");
    if (static_cast<int>(codebook.size()) != L || static_cast<int>(policy.size()) != L)
        throw InputError("strategy tables must cover every message");
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(outputs.size()), n);
    if (decoder.size() != leaves) throw InputError("decoder must be total on Y^n");
    for (int v : decoder)
        if (v < 0 || v >= L) throw InputError("decoder value out of range");
    for (int m = 0; m < L; ++m) {
        if (static_cast<int>(codebook[static_cast<size_t>(m)].size()) != n)
            throw InputError("codeword length mismatch");
        for (int x : codebook[static_cast<size_t>(m)])
            if (x < 0 || x >= inputs.size()) throw InputError("codeword symbol out of range");
        if (static_cast<int>(policy[static_cast<size_t>(m)].size()) != n)
            throw InputError("policy must cover every step");
        std::uint64_t prefixes = 1;
        for (int i = 0; i < n; ++i) {
            if (policy[static_cast<size_t>(m)][static_cast<size_t>(i)].size() !=
                prefixes * static_cast<std::uint64_t>(outputs.size()))
                throw InputError("policy level has the wrong prefix count");
            prefixes *= static_cast<std::uint64_t>(outputs.size());
        }
    }
}

double MartingaleTable::max_error() const {
    double m = 0.0;
    for (const auto& per_message : values) m = std::max(m, per_message.at(0).at(0));
    return m;
}

void CodingScheme::validate(int causal_alphabet_size) const {
    if (n < 1 || L < 1) throw InputError("scheme needs n, L >= 1");
    if (static_cast<int>(codewords.size()) != L) throw InputError("scheme needs a codeword per message");
    for (const auto& w : codewords) {
        if (static_cast<int>(w.size()) != n) throw InputError("codeword length mismatch");
        for (int v : w)
            if (v < 0 || v >= x.size()) throw InputError("codeword symbol out of range");
    }
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(y.size()), n);
    if (decoder.size() != leaves) throw InputError("decoder must be total on Y^n");
    for (int v : decoder)
        if (v < 0 || v >= L) throw InputError("decoder value out of range");
    if (has_causal()) {
        if (static_cast<int>(causal.size()) != L) throw InputError("causal policy must cover messages");
        for (const auto& per_m : causal) {
            if (static_cast<int>(per_m.size()) != n) throw InputError("causal policy must cover steps");
            std::uint64_t prefixes = 1;
            for (int i = 0; i < n; ++i) {
                if (per_m[static_cast<size_t>(i)].size() != prefixes)
                    throw InputError("causal level has the wrong prefix count");
                for (int z : per_m[static_cast<size_t>(i)])
                    if (z < 0 || z >= causal_alphabet_size)
                        throw InputError("causal input out of range");
                prefixes *= static_cast<std::uint64_t>(y.size());
            }
        }
    }
}

VerifyReport verify_game(const GameSpec& spec, const TeamStrategy& strategy, double tol) {
    strategy.validate();
    if (strategy.n != spec.n || strategy.L != spec.L)
        throw InputError("strategy does not match the game parameters");
    if (strategy.inputs != spec.channel.inputs || strategy.outputs != spec.channel.outputs())
        throw InputError("strategy alphabets do not match the channel");
    if (spec.eps <= 0.0 || spec.eps >= 1.0) throw InputError("eps must lie in (0,1)");
    const int ny = strategy.outputs.size();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(ny), spec.n);
    if (static_cast<std::uint64_t>(spec.L) * leaves > spec.node_cap)
        throw ResourceLimit("verification tree exceeds the node cap");

    VerifyReport rep;
    rep.min_payoff = std::numeric_limits<double>::infinity();
    const double floor = -spec.eps - tol;

    std::vector<int> path(static_cast<size_t>(spec.n), 0);
    for (int m = 0; m < spec.L; ++m) {
        // DFS with explicit recursion over the prefix tree.
        std::function<void(int, std::uint64_t, double)> walk = [&](int i, std::uint64_t rank,
                                                                   double sum) {
            ++rep.nodes;
            if (i == spec.n) {
                const double payoff =
                    sum - (strategy.decoder[static_cast<size_t>(rank)] != m ? 1.0 : 0.0);
                if (payoff < rep.min_payoff) {
                    rep.min_payoff = payoff;
                    rep.worst_message = m;
                    rep.worst_path = path;
                }
                return;
            }
            std::span<const double> w = strategy.portfolio(m, i, rank);
            const int xi = strategy.codebook[static_cast<size_t>(m)][static_cast<size_t>(i)];
            Portfolio pf(strategy.outputs, std::vector<double>(w.begin(), w.end()));
            if (!contains_portfolio(spec.channel.at(xi), pf, tol)) {
                if (rep.violations.size() < 16) {
                    MembershipViolation v;
                    v.message = m;
                    v.step = i;
                    v.prefix.assign(path.begin(), path.begin() + i);
                    v.detail = "portfolio outside channel cone at input " +
                               strategy.inputs.symbol(xi);
                    rep.violations.push_back(std::move(v));
                } else {
                    return;  // enough diagnostics; stop expanding this branch
                }
            }
            for (int y = 0; y < ny; ++y) {
                path[static_cast<size_t>(i)] = y;
                const double child = sum + w[static_cast<size_t>(y)];
                if (spec.prefix_rule && child < floor) rep.prefix_breach = true;
                walk(i + 1, rank * static_cast<std::uint64_t>(ny) + static_cast<std::uint64_t>(y),
                     child);
            }
        };
        walk(0, 0, 0.0);
    }
    rep.win = rep.violations.empty() && !rep.prefix_breach && rep.min_payoff >= floor;
    return rep;
}

WorstCaseResult worst_case_error(const CodingScheme& scheme, const AVCFKernel& model,
                                 std::uint64_t node_cap) {
    scheme.validate(model.z.size());
    if (scheme.x != model.x || scheme.y != model.y)
        throw InputError("scheme alphabets do not match the kernel");
    const int ny = model.y.size();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(ny), scheme.n);
    if (static_cast<std::uint64_t>(scheme.L) * leaves > node_cap)
        throw ResourceLimit("error recursion exceeds the node cap");

    MartingaleTable table;
    table.n = scheme.n;
    table.L = scheme.L;
    table.outputs = model.y;
    table.values.resize(static_cast<size_t>(scheme.L));
    for (int m = 0; m < scheme.L; ++m) {
        auto& levels = table.values[static_cast<size_t>(m)];
        levels.resize(static_cast<size_t>(scheme.n) + 1);
        levels[static_cast<size_t>(scheme.n)].resize(leaves);
        for (std::uint64_t r = 0; r < leaves; ++r)
            levels[static_cast<size_t>(scheme.n)][r] =
                scheme.decoder[static_cast<size_t>(r)] != m ? 1.0 : 0.0;
        for (int i = scheme.n - 1; i >= 0; --i) {
            const std::uint64_t width = checked_pow(static_cast<std::uint64_t>(ny), i);
            levels[static_cast<size_t>(i)].resize(width);
            const int xi = scheme.codewords[static_cast<size_t>(m)][static_cast<size_t>(i)];
            for (std::uint64_t r = 0; r < width; ++r) {
                const int zi = scheme.has_causal()
                                   ? scheme.causal[static_cast<size_t>(m)][static_cast<size_t>(i)]
                                                  [static_cast<size_t>(r)]
                                   : 0;
                double worst = 0.0;
                for (int vi = 0; vi < model.v.size(); ++vi) {
                    auto row = model.row(xi, zi, vi);
                    double s = 0.0;
                    for (int yv = 0; yv < ny; ++yv)
                        s += row[static_cast<size_t>(yv)] *
                             levels[static_cast<size_t>(i) + 1]
                                   [r * static_cast<std::uint64_t>(ny) + static_cast<std::uint64_t>(yv)];
                    worst = std::max(worst, s);
                }
                levels[static_cast<size_t>(i)][r] = worst;
            }
        }
    }
    return {table.max_error(), std::move(table)};
}

WorstCaseResult worst_case_error(const CodingScheme& scheme, const DMCKernel& model,
                                 std::uint64_t node_cap) {
    const bool feedback = scheme.model == CodingScheme::Model::DmcFeedback;
    return worst_case_error(scheme, avcf_from_dmc(model, feedback), node_cap);
}

GameChannel channel_for_scheme(const CodingScheme&, const AVCFKernel& model) {
    return channel_from_avcf(model);
}

GameChannel channel_for_scheme(const CodingScheme& scheme, const DMCKernel& model) {
    return scheme.model == CodingScheme::Model::DmcFeedback ? channel_from_dmc_feedback(model)
                                                            : channel_from_dmc(model);
}

GameChannel channel_for_scheme(const CodingScheme& scheme, const BipartiteGraph& model) {
    return scheme.model == CodingScheme::Model::ZeroErrorFeedback
               ? channel_from_graph_feedback(model)
               : channel_from_graph(model);
}

namespace {

std::string prefix_key(const Alphabet& y, std::uint64_t rank, int len) {
    std::vector<int> seq = unrank_sequence(rank, len, y.size());
    return sequence_label(seq, y);
}

TeamStrategy martingale_from_table(const CodingScheme& scheme, const MartingaleTable& table,
                                   const GameChannel& channel, double tol) {
    TeamStrategy st;
    st.inputs = channel.inputs;
    st.outputs = scheme.y;
    st.n = scheme.n;
    st.L = scheme.L;
    st.codebook = scheme.codewords;
    st.decoder = scheme.decoder;
    const int ny = scheme.y.size();
    st.policy.resize(static_cast<size_t>(scheme.L));
    for (int m = 0; m < scheme.L; ++m) {
        auto& levels = st.policy[static_cast<size_t>(m)];
        levels.resize(static_cast<size_t>(scheme.n));
        for (int i = 0; i < scheme.n; ++i) {
            const auto& parent = table.values[static_cast<size_t>(m)][static_cast<size_t>(i)];
            const auto& child = table.values[static_cast<size_t>(m)][static_cast<size_t>(i) + 1];
            auto& level = levels[static_cast<size_t>(i)];
            level.resize(parent.size() * static_cast<size_t>(ny));
            for (size_t r = 0; r < parent.size(); ++r)
                for (int yv = 0; yv < ny; ++yv)
                    level[r * static_cast<size_t>(ny) + static_cast<size_t>(yv)] =
                        child[r * static_cast<size_t>(ny) + static_cast<size_t>(yv)] - parent[r];
            // Each portfolio must live in its channel cone; a failure means
            // the scheme and model disagree.
            const int xi = st.codebook[static_cast<size_t>(m)][static_cast<size_t>(i)];
            for (size_t r = 0; r < parent.size(); ++r) {
                std::vector<double> w(level.begin() + static_cast<long>(r * static_cast<size_t>(ny)),
                                      level.begin() + static_cast<long>((r + 1) * static_cast<size_t>(ny)));
                if (!contains_portfolio(channel.at(xi), Portfolio(scheme.y, std::move(w)), tol))
                    throw SynthesisError("martingale portfolio outside the channel cone", m,
                                         prefix_key(scheme.y, r, i));
            }
        }
    }
    st.validate();
    return st;
}

TeamStrategy zero_error_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const BipartiteGraph& graph, double tol) {
    const GameChannel channel = channel_for_scheme(scheme, graph);
    TeamStrategy st;
    st.inputs = channel.inputs;
    st.outputs = scheme.y;
    st.n = scheme.n;
    st.L = scheme.L;
    st.decoder = scheme.decoder;
    const int ny = scheme.y.size();
    const bool feedback = kind == StrategyKind::ZeroErrorFeedback;
    if (feedback && !scheme.has_causal())
        throw InputError("zero_error_feedback needs the causal input policy");
    st.codebook = feedback
                      ? std::vector<std::vector<int>>(static_cast<size_t>(scheme.L),
                                                      std::vector<int>(static_cast<size_t>(scheme.n), 0))
                      : scheme.codewords;
    st.policy.resize(static_cast<size_t>(scheme.L));
    for (int m = 0; m < scheme.L; ++m) {
        auto& levels = st.policy[static_cast<size_t>(m)];
        levels.resize(static_cast<size_t>(scheme.n));
        std::uint64_t prefixes = 1;
        for (int i = 0; i < scheme.n; ++i) {
            auto& level = levels[static_cast<size_t>(i)];
            level.resize(prefixes * static_cast<std::uint64_t>(ny));
            for (std::uint64_t r = 0; r < prefixes; ++r) {
                const int xe = feedback
                                   ? scheme.causal[static_cast<size_t>(m)][static_cast<size_t>(i)]
                                                  [static_cast<size_t>(r)]
                                   : scheme.codewords[static_cast<size_t>(m)][static_cast<size_t>(i)];
                for (int yv = 0; yv < ny; ++yv)
                    level[r * static_cast<std::uint64_t>(ny) + static_cast<std::uint64_t>(yv)] =
                        graph.has_edge(xe, yv) ? 0.0 : 1.0;
                std::vector<double> w(level.begin() + static_cast<long>(r * static_cast<std::uint64_t>(ny)),
                                      level.begin() + static_cast<long>((r + 1) * static_cast<std::uint64_t>(ny)));
                const int xi = st.codebook[static_cast<size_t>(m)][static_cast<size_t>(i)];
                if (!contains_portfolio(channel.at(xi), Portfolio(scheme.y, std::move(w)), tol))
                    throw SynthesisError("indicator portfolio outside the channel cone", m,
                                         prefix_key(scheme.y, r, i));
            }
            prefixes *= static_cast<std::uint64_t>(ny);
        }
    }
    st.validate();
    return st;
}

}  // namespace

TeamStrategy synthesize_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const AVCFKernel& model, double tol) {
    if (kind != StrategyKind::Martingale)
        throw InputError("zero-error synthesis needs a bipartite graph model");
    WorstCaseResult wc = worst_case_error(scheme, model);
    return martingale_from_table(scheme, wc.table, channel_for_scheme(scheme, model), tol);
}

TeamStrategy synthesize_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const DMCKernel& model, double tol) {
    if (kind != StrategyKind::Martingale)
        throw InputError("zero-error synthesis needs a bipartite graph model");
    const bool feedback = scheme.model == CodingScheme::Model::DmcFeedback;
    return synthesize_strategy(kind, scheme, avcf_from_dmc(model, feedback), tol);
}

TeamStrategy synthesize_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const BipartiteGraph& model, double tol) {
    if (kind == StrategyKind::Martingale) {
        const bool feedback = scheme.model == CodingScheme::Model::ZeroErrorFeedback;
        return synthesize_strategy(kind, scheme, avcf_from_graph(model, feedback), tol);
    }
    return zero_error_strategy(kind, scheme, model, tol);
}

bool check_zero_error_code(const std::vector<std::vector<int>>& codewords,
                           const std::vector<int>& decoder, const BipartiteGraph& graph,
                           int n, int L, std::uint64_t node_cap) {
    if (static_cast<int>(codewords.size()) != L) throw InputError("codeword count mismatch");
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(graph.outputs.size()), n);
    if (decoder.size() != leaves) throw InputError("decoder must be total on Y^n");
    std::uint64_t nodes = 0;
    for (int m = 0; m < L; ++m) {
        const auto& word = codewords[static_cast<size_t>(m)];
        if (static_cast<int>(word.size()) != n) throw InputError("codeword length mismatch");
        std::vector<std::vector<int>> options;
        for (int x : word) options.push_back(graph.outputs_of(x));
        std::function<bool(int, std::uint64_t)> walk = [&](int i, std::uint64_t rank) {
            if (++nodes > node_cap) throw ResourceLimit("zero-error check exceeds the node cap");
            if (i == n) return decoder[static_cast<size_t>(rank)] == m;
            for (int yv : options[static_cast<size_t>(i)]) {
                if (!walk(i + 1, rank * static_cast<std::uint64_t>(graph.outputs.size()) +
                                     static_cast<std::uint64_t>(yv)))
                    return false;
            }
            return true;
        };
        if (!walk(0, 0)) return false;
    }
    return true;
}

int AdversarialCostStrategy::choose_output(int m, std::span<const int> prefix,
                                           const Portfolio& cost) const {
    const int i = static_cast<int>(prefix.size());
    if (i >= base.n) throw InputError("game already finished");
    const int xi = base.codebook.at(static_cast<size_t>(m)).at(static_cast<size_t>(i));
    if (!contains_portfolio(cost_channel.at(xi), cost, tol))
        throw InputError("adversary cost outside the cost cone");
    const std::uint64_t rank = rank_sequence(prefix, base.outputs.size());
    std::span<const double> w = base.portfolio(m, i, rank);
    double scale = 1.0;
    for (double v : cost.payoffs) scale = std::max(scale, std::fabs(v));
    for (size_t y = 0; y < w.size(); ++y) scale = std::max(scale, std::fabs(w[y]));
    for (int y = 0; y < base.outputs.size(); ++y)
        if (cost.payoffs[static_cast<size_t>(y)] + w[static_cast<size_t>(y)] <= tol * scale)
            return y;
    throw DualityViolation("no output with nonpositive combined cost: the base strategy is not "
                           "a winning strategy for the dual channel",
                           i);
}

AdversarialCostStrategy transform_acccg(const TeamStrategy& strategy, const GameChannel& t,
                                        double tol) {
    strategy.validate();
    if (strategy.inputs != t.inputs || strategy.outputs != t.outputs())
        throw InputError("strategy alphabets do not match the cost channel");
    GameChannel w = dual_channel(t, tol);
    for (int m = 0; m < strategy.L; ++m) {
        for (int i = 0; i < strategy.n; ++i) {
            const int xi = strategy.codebook[static_cast<size_t>(m)][static_cast<size_t>(i)];
            const std::uint64_t prefixes =
                checked_pow(static_cast<std::uint64_t>(strategy.outputs.size()), i);
            for (std::uint64_t r = 0; r < prefixes; ++r) {
                std::span<const double> pw = strategy.portfolio(m, i, r);
                Portfolio pf(strategy.outputs, std::vector<double>(pw.begin(), pw.end()));
                if (!contains_portfolio(w.at(xi), pf, tol))
                    throw DualityViolation(
                        "portfolio at message " + std::to_string(m) + ", prefix '" +
                            prefix_key(strategy.outputs, r, i) + "' is outside the dual cone",
                        i);
            }
        }
    }
    return AdversarialCostStrategy{t, strategy, tol};
}

AcccgFalsifyReport falsify_acccg(const AdversarialCostStrategy& strategy, int n, int L,
                                 double eps, const std::vector<Portfolio>& generators,
                                 const std::vector<double>& gammas,
                                 std::uint64_t sequence_cap) {
    if (n != strategy.base.n || L > strategy.base.L)
        throw InputError("falsifier parameters do not match the strategy");
    if (generators.empty() || gammas.empty())
        throw InputError("falsifier needs generators and a gamma grid");
    for (double g : gammas)
        if (g < 0.0) throw InputError("gamma grid must be nonnegative");

    // Scaled generator portfolios valid per input symbol.
    const int nx = strategy.cost_channel.inputs.size();
    std::vector<std::vector<Portfolio>> options(static_cast<size_t>(nx));
    for (int x = 0; x < nx; ++x) {
        for (const auto& g : generators) {
            if (!contains_portfolio(strategy.cost_channel.at(x), g, strategy.tol)) continue;
            for (double gamma : gammas) {
                std::vector<double> t(g.payoffs.size());
                for (size_t y = 0; y < t.size(); ++y) t[y] = gamma * g.payoffs[y];
                options[static_cast<size_t>(x)].emplace_back(g.alphabet, std::move(t));
            }
        }
        if (options[static_cast<size_t>(x)].empty())
            throw InputError("no generator lies in the cost cone of input " +
                             strategy.cost_channel.inputs.symbol(x));
    }

    AcccgFalsifyReport rep;
    rep.min_payoff = std::numeric_limits<double>::infinity();
    for (int m = 0; m < L; ++m) {
        const auto& word = strategy.base.codebook[static_cast<size_t>(m)];
        std::uint64_t count = 1;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t c = options[static_cast<size_t>(word[static_cast<size_t>(i)])].size();
            if (count > sequence_cap / std::max<std::uint64_t>(c, 1))
                throw ResourceLimit("falsifier sequence count exceeds cap");
            count *= c;
        }
        rep.sequences += count;
        std::vector<int> pick(static_cast<size_t>(n), 0);
        while (true) {
            std::vector<int> prefix;
            prefix.reserve(static_cast<size_t>(n));
            double cost_sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const auto& t = options[static_cast<size_t>(word[static_cast<size_t>(i)])]
                                       [static_cast<size_t>(pick[static_cast<size_t>(i)])];
                const int y = strategy.choose_output(m, prefix, t);
                cost_sum += t.payoffs[static_cast<size_t>(y)];
                prefix.push_back(y);
            }
            const std::uint64_t rank = rank_sequence(prefix, strategy.base.outputs.size());
            const double payoff =
                -cost_sum - (strategy.base.decoder[static_cast<size_t>(rank)] != m ? 1.0 : 0.0);
            if (payoff < rep.min_payoff) {
                rep.min_payoff = payoff;
                rep.worst_message = m;
            }
            int i = n - 1;
            for (; i >= 0; --i) {
                const int c = static_cast<int>(
                    options[static_cast<size_t>(word[static_cast<size_t>(i)])].size());
                if (++pick[static_cast<size_t>(i)] < c) break;
                pick[static_cast<size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }
    rep.violation_found = rep.min_payoff < -eps - strategy.tol;
    return rep;
}

// ---- mail insurance ----

MailResult mail_insurance(int n, int k, double p) {
    if (n < 1 || k < 1 || k > n) throw InputError("mail insurance needs 1 <= k <= n");
    if (p <= 0.0 || p >= 1.0) throw InputError("loss probability must lie in (0,1)");
    // pe[i][t]: failure probability with i mails sent and t delivered.
    std::vector<std::vector<double>> pe(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) pe[static_cast<size_t>(i)].resize(static_cast<size_t>(i) + 1);
    for (int t = 0; t <= n; ++t) pe[static_cast<size_t>(n)][static_cast<size_t>(t)] = t < k ? 1.0 : 0.0;
    for (int i = n - 1; i >= 0; --i)
        for (int t = 0; t <= i; ++t)
            pe[static_cast<size_t>(i)][static_cast<size_t>(t)] =
                (1.0 - p) * pe[static_cast<size_t>(i) + 1][static_cast<size_t>(t) + 1] +
                p * pe[static_cast<size_t>(i) + 1][static_cast<size_t>(t)];

    MailResult res;
    res.n = n;
    res.k = k;
    res.p = p;
    res.constant_loss = pe[0][0];
    res.premiums.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        res.premiums[static_cast<size_t>(i)].resize(static_cast<size_t>(i) + 1);
        for (int t = 0; t <= i; ++t) {
            res.premiums[static_cast<size_t>(i)][static_cast<size_t>(t)] = {
                pe[static_cast<size_t>(i) + 1][static_cast<size_t>(t) + 1] -
                    pe[static_cast<size_t>(i)][static_cast<size_t>(t)],
                pe[static_cast<size_t>(i) + 1][static_cast<size_t>(t)] -
                    pe[static_cast<size_t>(i)][static_cast<size_t>(t)]};
        }
    }
    return res;
}

GameChannel MailResult::channel() const { return erasure_channel(p); }

TeamStrategy MailResult::to_team_strategy(std::uint64_t cap) const {
    const std::uint64_t leaves = checked_pow(2, n);
    if (leaves > cap) throw ResourceLimit("mail strategy table exceeds cap");
    TeamStrategy st;
    st.inputs = Alphabet({"0"});
    st.outputs = Alphabet({"delivered", "lost"});
    st.n = n;
    st.L = 1;
    st.codebook = {std::vector<int>(static_cast<size_t>(n), 0)};
    st.decoder.assign(leaves, 0);
    st.policy.resize(1);
    auto& levels = st.policy[0];
    levels.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t prefixes = checked_pow(2, i);
        auto& level = levels[static_cast<size_t>(i)];
        level.resize(prefixes * 2);
        for (std::uint64_t r = 0; r < prefixes; ++r) {
            // deliveries so far = number of 0 digits in the prefix
            int t = 0;
            std::uint64_t rr = r;
            for (int j = 0; j < i; ++j) {
                if (rr % 2 == 0) ++t;
                rr /= 2;
            }
            const auto& w = premiums[static_cast<size_t>(i)][static_cast<size_t>(t)];
            level[r * 2] = w[0];
            level[r * 2 + 1] = w[1];
        }
    }
    st.validate();
    return st;
}

MailSweep verify_mail(const MailResult& mail, double tol, std::uint64_t node_cap) {
    const std::uint64_t paths = checked_pow(2, mail.n);
    if (paths > node_cap) throw ResourceLimit("mail sweep exceeds the node cap");
    MailSweep sweep;
    sweep.paths = paths;
    sweep.min_payoff = std::numeric_limits<double>::infinity();
    sweep.max_payoff = -std::numeric_limits<double>::infinity();
    for (std::uint64_t pattern = 0; pattern < paths; ++pattern) {
        double sum = 0.0;
        int t = 0;
        for (int i = 0; i < mail.n; ++i) {
            const int lost = static_cast<int>((pattern >> i) & 1u);
            sum += mail.premiums[static_cast<size_t>(i)][static_cast<size_t>(t)]
                                [static_cast<size_t>(lost)];
            if (!lost) ++t;
        }
        const double payoff = sum - (t < mail.k ? 1.0 : 0.0);
        sweep.min_payoff = std::min(sweep.min_payoff, payoff);
        sweep.max_payoff = std::max(sweep.max_payoff, payoff);
        sweep.max_deviation = std::max(sweep.max_deviation, std::fabs(payoff + mail.constant_loss));
    }
    sweep.constant = sweep.max_deviation <= tol;
    return sweep;
}

bool coding_feasible_by_degradedness(const GameChannel& w, int n, int L, double eps, double tol,
                                     std::uint64_t enumeration_cap) {
    DCCone requirement = requirement_cone(L, eps);
    DCCone uses = n_use_cone(w, n, NUseMode::AllInputs, nullptr, enumeration_cap);
    return deterministically_degraded(requirement, uses, tol, enumeration_cap);
}

}  // namespace dcgame
