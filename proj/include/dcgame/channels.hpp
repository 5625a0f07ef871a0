#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dcgame/cone.hpp"

namespace dcgame {

/// Map from a finite input alphabet to pricing DC cones over one output
/// alphabet.
struct GameChannel {
    Alphabet inputs;
    std::vector<DCCone> cones;

    GameChannel() = default;
    GameChannel(Alphabet in, std::vector<DCCone> c);
    const DCCone& at(int x) const { return cones.at(static_cast<size_t>(x)); }
    const Alphabet& outputs() const;
    /// Union over all inputs.
    DCCone range_cone() const;
};

/// Stochastic matrix with one row per input.
struct DMCKernel {
    Alphabet inputs;
    Alphabet outputs;
    std::vector<std::vector<double>> rows;

    DMCKernel() = default;
    DMCKernel(Alphabet in, Alphabet out, std::vector<std::vector<double>> r);
};

/// Confusability structure: when the input is x the adversary may pick any
/// output y with (x, y) an edge.
struct BipartiteGraph {
    Alphabet inputs;
    Alphabet outputs;
    std::vector<std::pair<int, int>> edges;

    BipartiteGraph() = default;
    BipartiteGraph(Alphabet in, Alphabet out, std::vector<std::pair<int, int>> e);
    bool has_edge(int x, int y) const;
    std::vector<int> outputs_of(int x) const;
};

/// Conditional distribution over outputs given (noncausal input, causal
/// input, adversarial input).
struct AVCFKernel {
    Alphabet x;  // noncausal
    Alphabet z;  // causal
    Alphabet v;  // adversarial
    Alphabet y;  // outputs
    std::vector<double> p;  // [( (xi*|Z| + zi)*|V| + vi )*|Y| + yi]

    AVCFKernel() = default;
    AVCFKernel(Alphabet xs, Alphabet zs, Alphabet vs, Alphabet ys, std::vector<double> probs);
    std::span<const double> row(int xi, int zi, int vi) const;
};

// ---- channel constructors ----

GameChannel channel_from_dmc(const DMCKernel& k);
/// Single input; the union of the row halfspaces (noiseless feedback form).
GameChannel channel_from_dmc_feedback(const DMCKernel& k);
GameChannel channel_from_graph(const BipartiteGraph& g);
GameChannel channel_from_graph_feedback(const BipartiteGraph& g);
/// W(x) = union over causal inputs z of the cell with one normal per
/// adversary action v.
GameChannel channel_from_avcf(const AVCFKernel& k);

GameChannel bsc_channel(double beta);
GameChannel bsc_feedback_channel(double beta);
/// Single-input mail/erasure channel over {delivered, lost}, built from the
/// insurance generator (-1, 1/p - 1).
GameChannel erasure_channel(double p);

/// Cycle confusability graph: x confusable with {x-1, x, x+1} mod k.
BipartiteGraph cycle_confusability_graph(int k);
/// Noisy-typewriter confusability: x confusable with {x, x+1} mod k. The
/// classic pentagon code {(i, 2i mod 5)} is zero-error for k = 5.
BipartiteGraph typewriter_graph(int k);

/// The decoding requirement as a cone over [L]: union over messages m of the
/// cell generated by (1{mhat != m} - eps). Equals robustify(noiseless, eps).
DCCone requirement_cone(int L, double eps);

/// Dual cone per input: swaps the encoder and adversary roles.
GameChannel dual_channel(const GameChannel& t, double tol = 1e-9);

enum class NUseMode { FixedInput, AllInputs };

/// Explicit n-use cone over the n-fold output alphabet. Requires
/// single-normal cells per input. FixedInput needs the input word xs.
DCCone n_use_cone(const GameChannel& w, int n, NUseMode mode,
                  const std::vector<int>* xs = nullptr,
                  std::uint64_t cap = 10'000'000);

/// Channel-level deterministic degradedness: one output relabeling f with
/// w(x) subseteq f#v(x) for every input.
bool deterministically_degraded(const GameChannel& w, const GameChannel& v, double tol = 1e-9,
                                std::uint64_t enumeration_cap = 2'000'000);
/// Channel-level nondeterministic degradedness for a supplied pointwise
/// non-informative kernel.
bool nondeterministically_degraded(const GameChannel& w, const GameChannel& v,
                                   const ConeKernel& f, double tol = 1e-9);

// ---- kernel adapters ----

/// DMC as an AVCF with singleton causal and adversarial inputs; with feedback
/// the rows move to the causal input and the noncausal input is a singleton.
AVCFKernel avcf_from_dmc(const DMCKernel& k, bool feedback);
/// Adversarial channel as an AVCF with deterministic kernels: the adversary
/// picks the output among the edges of x (with feedback, of the causal input).
AVCFKernel avcf_from_graph(const BipartiteGraph& g, bool feedback);

DMCKernel bsc_kernel(double beta);

}  // namespace dcgame
