#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcgame/channels.hpp"
#include "dcgame/cone.hpp"

namespace dcgame {

struct GameSpec {
    GameChannel channel;
    int n = 1;
    int L = 1;
    double eps = 0.5;
    bool prefix_rule = false;
    std::uint64_t node_cap = 10'000'000;
};

/// Codebook, per-prefix portfolio policy and decoder table for the channel
/// coding game. Policies are stored densely: policy[m][i] is a row-major
/// table over output prefixes y^i with one portfolio row per prefix.
struct TeamStrategy {
    Alphabet inputs;
    Alphabet outputs;
    int n = 0;
    int L = 1;
    std::vector<std::vector<int>> codebook;                // [m] -> x^n indices
    std::vector<std::vector<std::vector<double>>> policy;  // [m][i][rank*|Y| + y]
    std::vector<int> decoder;                              // [rank(y^n)] -> m

    std::span<const double> portfolio(int m, int i, std::uint64_t prefix_rank) const;
    void validate() const;
};

struct MembershipViolation {
    int message = 0;
    int step = 0;
    std::vector<int> prefix;
    std::string detail;
};

struct VerifyReport {
    bool win = false;
    double min_payoff = 0.0;
    int worst_message = -1;
    std::vector<int> worst_path;
    std::vector<MembershipViolation> violations;
    bool prefix_breach = false;
    std::uint64_t nodes = 0;
};

/// Exhaustive sweep over every message and adversary output sequence.
VerifyReport verify_game(const GameSpec& spec, const TeamStrategy& strategy, double tol = 1e-9);

/// Conditional worst-case error probabilities P_e(m, y^i) for every prefix.
struct MartingaleTable {
    int n = 0;
    int L = 1;
    Alphabet outputs;
    std::vector<std::vector<std::vector<double>>> values;  // [m][i][rank(y^i)]

    double at(int m, int i, std::uint64_t rank) const {
        return values.at(static_cast<size_t>(m)).at(static_cast<size_t>(i)).at(static_cast<size_t>(rank));
    }
    /// max_m P_e(m, empty prefix)
    double max_error() const;
};

/// Classical scheme fed to the synthesizers: codewords, optional causal-input
/// policy, decoder, and the channel model it is meant for.
struct CodingScheme {
    enum class Model { Dmc, DmcFeedback, Avcf, ZeroError, ZeroErrorFeedback };
    Model model = Model::Dmc;
    int n = 0;
    int L = 1;
    Alphabet x;  // noncausal input alphabet (singleton for feedback models)
    Alphabet y;  // output alphabet
    std::vector<std::vector<int>> codewords;               // [m] -> x^n
    std::vector<std::vector<std::vector<int>>> causal;     // [m][i][rank(y^i)] -> z, empty if none
    std::vector<int> decoder;                              // [rank(y^n)] -> m

    bool has_causal() const { return !causal.empty(); }
    void validate(int causal_alphabet_size) const;
};

struct WorstCaseResult {
    double epsilon_star = 0.0;
    MartingaleTable table;
};

/// Backward recursion over the game tree: leaves are decoding-error
/// indicators, inner nodes take the worst adversary action of the expected
/// child error. A DMC is the one-action case.
WorstCaseResult worst_case_error(const CodingScheme& scheme, const AVCFKernel& model,
                                 std::uint64_t node_cap = 10'000'000);
WorstCaseResult worst_case_error(const CodingScheme& scheme, const DMCKernel& model,
                                 std::uint64_t node_cap = 10'000'000);

enum class StrategyKind { Martingale, ZeroError, ZeroErrorFeedback };

/// Builds the winning strategy for a scheme: martingale differences of the
/// worst-case error table, or indicator portfolios on non-edges for the
/// zero-error kinds. Every produced portfolio is checked against its channel
/// cone; a failure raises SynthesisError with the offending prefix.
TeamStrategy synthesize_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const AVCFKernel& model, double tol = 1e-9);
TeamStrategy synthesize_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const DMCKernel& model, double tol = 1e-9);
TeamStrategy synthesize_strategy(StrategyKind kind, const CodingScheme& scheme,
                                 const BipartiteGraph& model, double tol = 1e-9);

/// The game channel a scheme plays against (feedback models fold the input
/// into a single cone).
GameChannel channel_for_scheme(const CodingScheme& scheme, const AVCFKernel& model);
GameChannel channel_for_scheme(const CodingScheme& scheme, const DMCKernel& model);
GameChannel channel_for_scheme(const CodingScheme& scheme, const BipartiteGraph& model);

/// Exhaustively checks that every output sequence reachable through the graph
/// from codeword m decodes to m.
bool check_zero_error_code(const std::vector<std::vector<int>>& codewords,
                           const std::vector<int>& decoder, const BipartiteGraph& graph,
                           int n, int L, std::uint64_t node_cap = 10'000'000);

// ---- adversarial cost game ----

/// Wraps a winning strategy for the dual channel: upon an adversary cost in
/// T(x_i) the encoder picks the smallest-index output whose combined cost is
/// nonpositive (existence is the duality guarantee).
struct AdversarialCostStrategy {
    GameChannel cost_channel;  // T
    TeamStrategy base;         // verified for dual_channel(T)
    double tol = 1e-9;

    int choose_output(int m, std::span<const int> prefix, const Portfolio& cost) const;
};

/// Validates every policy portfolio against the dual cones before wrapping;
/// throws DualityViolation at the first failure.
AdversarialCostStrategy transform_acccg(const TeamStrategy& strategy, const GameChannel& t,
                                        double tol = 1e-9);

struct AcccgFalsifyReport {
    bool violation_found = false;
    double min_payoff = 0.0;
    int worst_message = -1;
    std::uint64_t sequences = 0;
};

/// Sound-but-incomplete falsifier: plays every cost sequence drawn from the
/// generator portfolios scaled by the gamma grid. Generators not lying in
/// T(x_i) at a step are skipped there.
AcccgFalsifyReport falsify_acccg(const AdversarialCostStrategy& strategy, int n, int L,
                                 double eps, const std::vector<Portfolio>& generators,
                                 const std::vector<double>& gammas,
                                 std::uint64_t sequence_cap = 2'000'000);

// ---- mail insurance ----

/// k-of-n delivery game over the mail/erasure channel: the decoder succeeds
/// iff at least k mails arrive. The martingale premiums depend only on
/// (step, deliveries so far), so the strategy stays compact for large n.
struct MailResult {
    int n = 0;
    int k = 0;
    double p = 0.0;
    double constant_loss = 0.0;
    /// premiums[i][t] = portfolio (delivered, lost) at step i with t arrived
    std::vector<std::vector<std::array<double, 2>>> premiums;

    GameChannel channel() const;
    /// Dense strategy for the game interfaces; needs 2^n within cap.
    TeamStrategy to_team_strategy(std::uint64_t cap = 1u << 20) const;
};

MailResult mail_insurance(int n, int k, double p);

struct MailSweep {
    bool constant = false;   // every pattern's loss equals the constant loss
    double min_payoff = 0.0;
    double max_payoff = 0.0;
    double max_deviation = 0.0;  // |payoff + constant_loss| maximum
    std::uint64_t paths = 0;
};

/// Exhaustive check over all 2^n delivery patterns that the realized loss
/// equals the constant loss.
MailSweep verify_mail(const MailResult& mail, double tol = 1e-9,
                      std::uint64_t node_cap = 10'000'000);

// ---- one-equation coding feasibility ----

/// Feasibility of the coding requirement as a degradedness constraint: some
/// decoder map f: Y^n -> [L] makes the requirement cone a subset of the
/// pushforward of the n-use cone.
bool coding_feasible_by_degradedness(const GameChannel& w, int n, int L, double eps,
                                     double tol = 1e-9,
                                     std::uint64_t enumeration_cap = 2'000'000);

}  // namespace dcgame
