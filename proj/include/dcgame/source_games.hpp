#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcgame/cone.hpp"
#include "dcgame/games.hpp"

namespace dcgame {

/// Per-prefix portfolio policy, encoder and decoder for the lossless source
/// coding game. The policy does not depend on the message: the encoder acts
/// after the whole source sequence is revealed.
struct SourceStrategy {
    Alphabet source;
    int n = 0;
    int L = 1;
    std::vector<std::vector<double>> policy;  // [i][rank(x^i)*|X| + x]
    std::vector<int> encoder;                 // [rank(x^n)] -> m
    std::vector<std::vector<int>> decoder;    // [m] -> xhat^n

    std::span<const double> portfolio(int i, std::uint64_t prefix_rank) const;
    void validate() const;
};

struct SourceGameSpec {
    DCCone cone;
    int n = 1;
    int L = 1;
    double eps = 0.5;
    std::uint64_t node_cap = 10'000'000;
};

/// Exhaustive sweep over all source sequences.
VerifyReport verify_source_game(const SourceGameSpec& spec, const SourceStrategy& strategy,
                                double tol = 1e-9);

double shannon_entropy_bits(std::span<const double> p);

/// sup{H(p) : p in the simplex, <p,a> <= threshold}, solved exactly by a
/// Gibbs-tilt bisection. feasible=false (value -infinity) when no
/// distribution meets the constraint.
struct MaxEntropyResult {
    double value = 0.0;
    std::vector<double> argmax;
    bool feasible = true;
};
MaxEntropyResult max_entropy_under(std::span<const double> a, double threshold);

struct EntropyResult {
    double value = 0.0;
    /// Two-sided certificate; false when the value is an upper bound only.
    bool certified = true;
    std::string method;
};

/// min over generators g of sup{H(p) : <p,g> <= 0}; exact for cones supplied
/// in generator form.
EntropyResult entropy_generator_form(const Alphabet& alphabet,
                                     const std::vector<Portfolio>& generators);
/// H(p°) = H(p); requires a single-halfspace cone.
EntropyResult entropy_halfspace_closed_form(const DCCone& a);
/// Multi-start sampling of cell portfolios through random-objective LPs; each
/// sample certifies an upper bound, the best is reported (not certified).
EntropyResult entropy_search_upper_bound(const DCCone& a, int samples = 64,
                                         unsigned seed = 1, double tol = 1e-9);

struct SourceSynthesis {
    SourceStrategy strategy;
    double error_probability;  // P_e(empty prefix)
};

/// Martingale-difference strategy for the halfspace cone p°: portfolios are
/// successive differences of conditional error probabilities of the supplied
/// lossless code (codeword list; sequences outside it encode to 0).
SourceSynthesis synthesize_source_strategy(const Normal& p, const Alphabet& source,
                                           const std::vector<std::vector<int>>& codewords,
                                           int n, double tol = 1e-9);

struct SanovScheme {
    double threshold = 0.0;              // (1-eps)/gamma
    std::uint64_t count = 0;             // |S| via type classes
    std::vector<std::vector<int>> listed;  // S in lexicographic order (when enumerable)
    double exponent = 0.0;                 // sup{H(p): <p,a> <= threshold}
    double cardinality_bound = 0.0;        // (n+1)^|X| 2^{n exponent}
    bool bound_ok = false;                 // count <= cardinality_bound
    SourceStrategy strategy;               // constant portfolio (gamma/n) a
};

/// Sequences whose running payoff stays below the insurance threshold, plus
/// the constant-portfolio scheme built on them. L defaults to |S|.
SanovScheme sanov_scheme(const Portfolio& a, double gamma, double eps, int n, int L = -1,
                         std::uint64_t enumeration_cap = 2'000'000);

}  // namespace dcgame
