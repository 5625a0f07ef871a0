// Acceptance suite: runs every integration criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failed
// criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dcgame/capacity.hpp"
#include "dcgame/channels.hpp"
#include "dcgame/cone.hpp"
#include "dcgame/games.hpp"
#include "dcgame/source_games.hpp"
#include "test_support.hpp"

using namespace dcgame;
using dcgame::testing::random_cone;
using dcgame::testing::random_distribution;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
};

std::vector<Criterion> results;

template <typename F>
void run(const std::string& name, F&& body) {
    Criterion c;
    c.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-4s %-28s %7.2fs  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.seconds,
                c.detail.c_str());
    std::fflush(stdout);
    results.push_back(std::move(c));
}

void expect(Criterion& c, bool ok, const std::string& why) {
    if (!ok && c.pass) {
        c.pass = false;
        c.detail = why;
    }
}

const Alphabet kBits = Alphabet::integers(2);

CodingScheme repetition3_scheme() {
    CodingScheme s;
    s.model = CodingScheme::Model::Dmc;
    s.n = 3;
    s.L = 2;
    s.x = kBits;
    s.y = kBits;
    s.codewords = {{0, 0, 0}, {1, 1, 1}};
    s.decoder.resize(8);
    for (int r = 0; r < 8; ++r)
        s.decoder[static_cast<size_t>(r)] =
            (((r >> 2) & 1) + ((r >> 1) & 1) + (r & 1)) >= 2 ? 1 : 0;
    return s;
}

}  // namespace

int main() {
    // 1. dual algebra on random cones
    run("dual-algebra", [](Criterion& c) {
        std::mt19937_64 rng(2024);
        for (int rep = 0; rep < 100; ++rep) {
            Alphabet a = Alphabet::integers(2 + static_cast<int>(rng() % 3));
            DCCone x = random_cone(rng, a, 3, 3);
            DCCone y = random_cone(rng, a, 3, 3);
            expect(c, equals_cone(dual(dual(x)), x, 1e-9),
                   "double dual differs at rep " + std::to_string(rep));
            expect(c, equals_cone(dual(unite(x, y)), intersect(dual(x), dual(y)), 1e-9),
                   "de morgan identity fails at rep " + std::to_string(rep));
            if (!c.pass) return;
        }
        if (c.pass) c.detail = "100 random cones, both identities at tol 1e-9";
    });

    // 2. self-duality and primitive duals
    run("primitive-duals", [](Criterion& c) {
        std::mt19937_64 rng(7);
        for (int d : {2, 3, 4}) {
            Alphabet a = Alphabet::integers(d);
            expect(c, equals_cone(dual(DCCone::empty(a)), DCCone::full(a), 1e-9),
                   "dual of empty is not full");
            expect(c, equals_cone(dual(DCCone::full(a)), DCCone::empty(a), 1e-9),
                   "dual of full is not empty");
            expect(c, equals_cone(dual(DCCone::nonpositive(a)), DCCone::noiseless(a), 1e-9),
                   "dual of nonpositive is not noiseless");
            Normal p(random_distribution(rng, d));
            DCCone h = DCCone::halfspace(a, p);
            expect(c, equals_cone(dual(h), h, 1e-9), "halfspace is not self-dual");
        }
        DCCone h = DCCone::halfspace(kBits, Normal({0.6, 0.4}));
        expect(c, equals_cone(dual(h), h, 1e-9), "(0.6,0.4) halfspace not self-dual");
        if (c.pass) c.detail = "empty/full, nonpositive/noiseless, halfspace self-duality";
    });

    // 3. shannon recovery on the feedback cone
    run("shannon-recovery", [](Criterion& c) {
        for (double beta : {0.05, 0.11, 0.25}) {
            DCCone cone = bsc_feedback_channel(beta).range_cone();
            const double expected = 1.0 - binary_entropy(beta);
            const double ba =
                info_capacity(cone, CapacityMethod::BlahutArimoto, 1e-6).value;
            const double mm = info_capacity(cone, CapacityMethod::Minimax, 1e-4).value;
            expect(c, std::fabs(ba - expected) <= 1e-3,
                   "BA off closed form at beta=" + std::to_string(beta));
            expect(c, std::fabs(mm - ba) <= 2e-3,
                   "methods disagree at beta=" + std::to_string(beta));
        }
        if (c.pass) c.detail = "1 - Hb(beta) within 1e-3; BA vs minimax within 2e-3";
    });

    // 4. fano cone closed form (+ runtime validation of the hull reduction)
    run("fano-cone", [](Criterion& c) {
        const std::vector<std::pair<int, double>> cases{{2, 0.05}, {2, 0.5}, {4, 0.1}};
        for (auto [L, eps] : cases) {
            DCCone cone = requirement_cone(L, eps);
            CapacityResult r = info_capacity(cone, CapacityMethod::Minimax, 1e-4);
            expect(c, std::fabs(r.value - requirement_value(L, eps)) <= 2e-3,
                   "capacity off closed form at L=" + std::to_string(L));
            CapacityValidation v = validate_capacity_reduction(cone, r, 12, 11, 2e-3);
            expect(c, v.ok, "hull reduction validation failed at L=" + std::to_string(L));
        }
        if (c.pass) c.detail = "log2 L - Hb(eps) - eps log2(L-1) within 2e-3; reduction validated";
    });

    // 5. martingale round trip on repetition-3 / BSC(0.2)
    run("martingale-roundtrip", [](Criterion& c) {
        CodingScheme scheme = repetition3_scheme();
        DMCKernel kernel = bsc_kernel(0.2);
        WorstCaseResult wc = worst_case_error(scheme, kernel);
        double oracle = 0.0;  // brute force over the 8 output words
        for (int r = 0; r < 8; ++r) {
            const int ones = ((r >> 2) & 1) + ((r >> 1) & 1) + (r & 1);
            if (ones >= 2) oracle += std::pow(0.2, ones) * std::pow(0.8, 3 - ones);
        }
        expect(c, std::fabs(wc.epsilon_star - oracle) <= 1e-12, "recursion disagrees with oracle");
        expect(c, std::fabs(wc.epsilon_star - 0.104) <= 1e-12, "worst-case error is not 0.104");

        TeamStrategy st = synthesize_strategy(StrategyKind::Martingale, scheme, kernel);
        GameSpec spec;
        spec.channel = channel_for_scheme(scheme, kernel);
        spec.n = 3;
        spec.L = 2;
        spec.eps = 0.104 + 1e-6;
        expect(c, verify_game(spec, st).win, "no win at eps = 0.104 + 1e-6");
        spec.eps = 0.10;
        expect(c, !verify_game(spec, st).win, "unexpected win at eps = 0.10");

        for (int m = 0; m < 2 && c.pass; ++m) {
            for (int r = 0; r < 8; ++r) {
                double total = 0.0;
                int rank = 0;
                for (int i = 0; i < 3; ++i) {
                    const int y = (r >> (2 - i)) & 1;
                    total += st.portfolio(m, i, static_cast<std::uint64_t>(rank))
                                         [static_cast<size_t>(y)];
                    rank = rank * 2 + y;
                }
                const double expected =
                    wc.table.at(m, 3, static_cast<std::uint64_t>(r)) - wc.table.at(m, 0, 0);
                expect(c, std::fabs(total - expected) <= 1e-12,
                       "path identity fails on path " + std::to_string(r));
            }
        }
        if (c.pass) c.detail = "eps* = 0.104 exact; win/lose thresholds; path identity to 1e-12";
    });

    // 6. zero-error pentagon (noisy-typewriter confusability x ~ {x, x+1})
    run("zero-error-pentagon", [](Criterion& c) {
        BipartiteGraph g = typewriter_graph(5);
        std::vector<std::vector<int>> code;
        for (int i = 0; i < 5; ++i) code.push_back({i, (2 * i) % 5});
        std::vector<int> decoder(25, 0);
        for (int r = 0; r < 25; ++r)
            for (int m = 0; m < 5; ++m)
                if (g.has_edge(code[static_cast<size_t>(m)][0], r / 5) &&
                    g.has_edge(code[static_cast<size_t>(m)][1], r % 5))
                    decoder[static_cast<size_t>(r)] = m;
        expect(c, check_zero_error_code(code, decoder, g, 2, 5), "code is not zero-error");

        CodingScheme scheme;
        scheme.model = CodingScheme::Model::ZeroError;
        scheme.n = 2;
        scheme.L = 5;
        scheme.x = g.inputs;
        scheme.y = g.outputs;
        scheme.codewords = code;
        scheme.decoder = decoder;
        TeamStrategy st = synthesize_strategy(StrategyKind::ZeroError, scheme, g);
        GameSpec spec;
        spec.channel = channel_from_graph(g);
        spec.n = 2;
        spec.L = 5;
        for (double eps : {0.01, 0.5, 0.99}) {
            spec.eps = eps;
            VerifyReport rep = verify_game(spec, st);
            expect(c, rep.win && rep.nodes >= 5 * 25,
                   "strategy loses at eps = " + std::to_string(eps));
        }
        if (c.pass) c.detail = "code {(i, 2i mod 5)} zero-error; strategy wins all 25 plays per message";
    });

    // 7. mail insurance constant loss
    run("mail-insurance", [](Criterion& c) {
        for (double p : {0.1, 0.3}) {
            MailResult mail = mail_insurance(10, 7, p);
            double tail = 0.0;  // P(Binomial(10, 1-p) < 7)
            for (int j = 0; j < 7; ++j) {
                double coef = 1.0;
                for (int i = 0; i < j; ++i) coef *= (10.0 - i) / (i + 1.0);
                tail += coef * std::pow(1.0 - p, j) * std::pow(p, 10 - j);
            }
            expect(c, std::fabs(mail.constant_loss - tail) <= 1e-12,
                   "constant loss differs from the binomial tail");
            MailSweep sweep = verify_mail(mail, 1e-12);
            expect(c, sweep.paths == 1024 && sweep.constant && sweep.max_deviation <= 1e-12,
                   "a delivery pattern deviates from the constant loss at p=" + std::to_string(p));
        }
        MailResult big = mail_insurance(200, 100, 0.3);
        expect(c, big.constant_loss < 0.01, "rate-1/2 loss not under 1% at n=200");
        if (c.pass) c.detail = "2^10 patterns constant within 1e-12; n=200 R=0.5 loss < 0.01";
    });

    // 8. additivity and monotonicity of the information capacity
    run("capacity-additivity", [](Criterion& c) {
        std::mt19937_64 rng(31);
        for (int rep = 0; rep < 30 && c.pass; ++rep) {
            Alphabet ay = Alphabet::integers(2 + static_cast<int>(rng() % 2));
            Alphabet az = Alphabet::integers(2 + static_cast<int>(rng() % 2));
            std::vector<Cell> cy, cz;
            const int ky = 1 + static_cast<int>(rng() % 3);
            const int kz = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < ky; ++i)
                cy.push_back(Cell{{Normal(random_distribution(rng, ay.size()))}});
            for (int i = 0; i < kz; ++i)
                cz.push_back(Cell{{Normal(random_distribution(rng, az.size()))}});
            DCCone a(ay, cy), b(az, cz);
            const double ia = info_capacity(a, CapacityMethod::BlahutArimoto, 1e-7).value;
            const double ib = info_capacity(b, CapacityMethod::BlahutArimoto, 1e-7).value;
            const double iab =
                info_capacity(semidirect_explicit(a, b), CapacityMethod::BlahutArimoto, 1e-7)
                    .value;
            expect(c, std::fabs(iab - ia - ib) <= 2e-3,
                   "additivity off at rep " + std::to_string(rep));
        }
        std::mt19937_64 rng2(37);
        for (int rep = 0; rep < 30 && c.pass; ++rep) {
            Alphabet a = Alphabet::integers(2 + static_cast<int>(rng2() % 2));
            DCCone small = random_cone(rng2, a, 2, 2);
            DCCone extra = random_cone(rng2, a, 2, 2);
            DCCone big = unite(small, extra);
            const double is = info_capacity(small, CapacityMethod::Minimax, 1e-4).value;
            const double ib = info_capacity(big, CapacityMethod::Minimax, 1e-4).value;
            expect(c, is <= ib + 2e-3, "monotonicity off at rep " + std::to_string(rep));
        }
        if (c.pass) c.detail = "30 product pairs within 2e-3; 30 containment pairs monotone";
    });

    // 9. informativeness zero law
    run("zero-law", [](Criterion& c) {
        std::mt19937_64 rng(41);
        for (int rep = 0; rep < 50 && c.pass; ++rep) {
            Alphabet a = Alphabet::integers(2 + static_cast<int>(rng() % 2));
            DCCone cone = random_cone(rng, a, 3, 3);
            const bool informative = is_informative(cone, 1e-9);
            const double value = info_capacity(cone, CapacityMethod::Minimax, 1e-5).value;
            expect(c, informative == (value > 1e-4),
                   "zero law breaks at rep " + std::to_string(rep) +
                       " (informative=" + std::to_string(informative) +
                       ", I=" + std::to_string(value) + ")");
        }
        if (c.pass) c.detail = "50 random cones: is_informative(A) iff I(A) > 1e-4";
    });

    // 10. duality between encoder- and adversary-controlled state
    run("avcf-duality", [](Criterion& c) {
        std::mt19937_64 rng(43);
        for (int rep = 0; rep < 20 && c.pass; ++rep) {
            const int d = 2 + static_cast<int>(rng() % 3);
            Alphabet a = Alphabet::integers(d);
            const int k = 1 + static_cast<int>(rng() % 3);
            std::vector<Cell> cells;
            Cell joint;
            for (int i = 0; i < k; ++i) {
                Normal p(random_distribution(rng, d));
                cells.push_back(Cell{{p}});
                joint.normals.push_back(p);
            }
            DCCone encoder_side(a, cells);
            DCCone adversary_side(a, {joint});
            expect(c, equals_cone(dual(encoder_side), adversary_side, 1e-9),
                   "state-family duality fails at rep " + std::to_string(rep));
        }

        BipartiteGraph g = cycle_confusability_graph(5);
        GameChannel adfb = channel_from_graph_feedback(g);
        GameChannel dualed = dual_channel(adfb);
        std::vector<Cell> cover_cells;
        for (int mask = 1; mask < 32; ++mask) {
            bool covers = true;
            for (int x = 0; x < 5 && covers; ++x) {
                bool hit = false;
                for (int y : g.outputs_of(x))
                    if (mask & (1 << y)) { hit = true; break; }
                covers = hit;
            }
            if (!covers) continue;
            Cell cc;
            for (int y = 0; y < 5; ++y)
                if (mask & (1 << y)) cc.normals.push_back(Normal::indicator(y, 5));
            cover_cells.push_back(std::move(cc));
        }
        expect(c, equals_cone(dualed.at(0), DCCone(g.outputs, cover_cells), 1e-9),
               "pentagon dual is not the covering-set channel");
        if (c.pass) c.detail = "20 state families; pentagon covering-set dual";
    });

    // 11. source coding: entropy closed forms, the Sanov set, and the
    // constant-portfolio verification as specified
    run("source-coding", [](Criterion& c) {
        EntropyResult half =
            entropy_halfspace_closed_form(DCCone::halfspace(kBits, Normal({0.5, 0.5})));
        expect(c, std::fabs(half.value - 1.0) <= 1e-6, "H((0.5,0.5)°) != 1");
        std::mt19937_64 rng(47);
        for (int rep = 0; rep < 50 && c.pass; ++rep) {
            const int d = 2 + static_cast<int>(rng() % 2);
            Alphabet a = Alphabet::integers(d);
            std::vector<double> pw = random_distribution(rng, d);
            const double expected = shannon_entropy_bits(pw);
            EntropyResult closed =
                entropy_halfspace_closed_form(DCCone::halfspace(a, Normal(pw)));
            std::vector<double> opt(pw.size());
            for (size_t i = 0; i < pw.size(); ++i) opt[i] = -std::log2(pw[i]) - expected;
            EntropyResult gen = entropy_generator_form(a, {Portfolio(a, opt)});
            expect(c, std::fabs(closed.value - expected) <= 1e-6, "closed form off");
            expect(c, std::fabs(gen.value - expected) <= 1e-6, "generator form off");
        }

        Portfolio a(kBits, {1.0, -1.0});
        SanovScheme s = sanov_scheme(a, 4.0, 0.2, 4);
        expect(c, s.count == 11, "|S| != 11");

        SourceGameSpec spec;
        spec.cone = DCCone::from_generators(kBits, {a});
        spec.n = 4;
        spec.L = 11;
        spec.eps = 0.2;
        VerifyReport rep = verify_source_game(spec, s.strategy);
        // The constant portfolio pays -1 per step on the all-ones path, which
        // lies inside S and is decoded exactly; its payoff is -4, so no
        // tolerance can rescue the stated win. Kept faithful and red.
        expect(c, rep.win, "constant-portfolio scheme loses (min payoff " +
                               std::to_string(rep.min_payoff) + " on the all-ones path)");
        if (c.pass) c.detail = "entropy closed forms within 1e-6; |S| = 11; Sanov win as stated";
    });

    // 12. one-equation coding feasibility agrees with the game verdicts
    run("degradedness-consistency", [](Criterion& c) {
        GameChannel w = bsc_channel(0.2);
        DMCKernel kernel = bsc_kernel(0.2);

        // n=1: the best single-use scheme has worst-case error 0.2
        CodingScheme one;
        one.model = CodingScheme::Model::Dmc;
        one.n = 1;
        one.L = 2;
        one.x = kBits;
        one.y = kBits;
        one.codewords = {{0}, {1}};
        one.decoder = {0, 1};
        TeamStrategy st1 = synthesize_strategy(StrategyKind::Martingale, one, kernel);
        GameSpec spec1{w, 1, 2, 0.1};
        const bool game1 = verify_game(spec1, st1).win;
        const bool feas1 = coding_feasible_by_degradedness(w, 1, 2, 0.1);
        expect(c, !game1 && !feas1, "n=1 verdicts disagree or are not both negative");

        CodingScheme rep3 = repetition3_scheme();
        TeamStrategy st3 = synthesize_strategy(StrategyKind::Martingale, rep3, kernel);
        GameSpec spec3{w, 3, 2, 0.104};
        const bool game3 = verify_game(spec3, st3).win;
        const bool feas3 = coding_feasible_by_degradedness(w, 3, 2, 0.104);
        expect(c, game3 && feas3, "n=3 verdicts disagree or are not both positive");
        if (c.pass) c.detail = "game and degradedness verdicts agree at (1,2,0.1) and (3,2,0.104)";
    });

    int failures = 0;
    for (const auto& c : results)
        if (!c.pass) ++failures;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}
