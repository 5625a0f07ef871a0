#include <cmath>
#include <random>

#include "doctest.h"
#include "dcgame/cone.hpp"
#include "dcgame/errors.hpp"
#include "test_support.hpp"

using namespace dcgame;
using dcgame::testing::generator_member_oracle;
using dcgame::testing::minplus_member_oracle;
using dcgame::testing::random_cone;
using dcgame::testing::random_portfolio;

namespace {

const Alphabet kBits = Alphabet::integers(2);

DCCone bsc_feedback_cone(double beta) {
    return DCCone(kBits, {Cell{{Normal({1.0 - beta, beta})}}, Cell{{Normal({beta, 1.0 - beta})}}});
}

}  // namespace

TEST_CASE("halfspace normalizes its normal") {
    DCCone h = DCCone::halfspace(kBits, Normal({2.0, 2.0}));
    REQUIRE(h.cells().size() == 1);
    CHECK(h.cells()[0].normals[0][0] == doctest::Approx(0.5));
    CHECK(h.cells()[0].normals[0][1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(Normal({0.0, 0.0}), InputError);
    CHECK_THROWS_AS(Normal({-1.0, 2.0}), InputError);
}

TEST_CASE("generator cell for a requirement row") {
    // payoff 1{y != m} - eps for m=0, eps=0.1 over two messages
    Portfolio g(kBits, {-0.1, 0.9});
    DCCone cone = DCCone::from_generators(kBits, {g});
    REQUIRE(cone.cells().size() == 1);
    const Cell& c = cone.cells()[0];
    REQUIRE(c.normals.size() == 2);
    CHECK(c.normals[0][0] == doctest::Approx(1.0));  // indicator on the negative coordinate
    CHECK(c.normals[1][0] == doctest::Approx(0.9));
    CHECK(c.normals[1][1] == doctest::Approx(0.1));

    // cross-check against a direct scaling search on random portfolios
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10000; ++i) {
        Portfolio s = random_portfolio(rng, kBits);
        CHECK(contains_portfolio(cone, s) == generator_member_oracle(g, s));
    }
}

TEST_CASE("adversarial cell constrains exactly the edge outputs") {
    Alphabet three = Alphabet::integers(3);
    DCCone cone = DCCone::adversarial_cell(three, {0, 1});
    REQUIRE(cone.cells().size() == 1);
    CHECK(cone.cells()[0].normals.size() == 2);
    CHECK(contains_portfolio(cone, Portfolio(three, {-1.0, 0.0, 100.0})));
    CHECK_FALSE(contains_portfolio(cone, Portfolio(three, {0.5, -1.0, 100.0})));
    // empty edge list: the full cell
    CHECK(DCCone::adversarial_cell(three, {}).has_full_cell());
}

TEST_CASE("membership basics") {
    CHECK(contains_portfolio(DCCone::nonpositive(kBits), Portfolio(kBits, {-1.0, -2.0})));
    CHECK_FALSE(contains_portfolio(DCCone::empty(kBits), Portfolio(kBits, {-1.0, -1.0})));
    CHECK(contains_portfolio(DCCone::full(kBits), Portfolio(kBits, {9.0, 9.0})));

    DCCone a = bsc_feedback_cone(0.25);
    CHECK(contains_portfolio(a, Portfolio(kBits, {-1.0, 3.0})));
    CHECK(contains_portfolio(a, Portfolio(kBits, {3.0, -1.0})));
    CHECK_FALSE(contains_portfolio(a, Portfolio(kBits, {2.0, 2.0})));

    CHECK_THROWS_AS(contains_portfolio(a, Portfolio(Alphabet::integers(3), {0, 0, 0})),
                    InputError);
}

TEST_CASE("membership is scale and downward closed") {
    std::mt19937_64 rng(5);
    Alphabet a3 = Alphabet::integers(3);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        DCCone a = random_cone(rng, a3, 3, 3);
        Portfolio s = random_portfolio(rng, a3);
        if (!contains_portfolio(a, s)) continue;
        const double gamma = u(rng);
        Portfolio scaled(a3, {gamma * s.payoffs[0], gamma * s.payoffs[1], gamma * s.payoffs[2]});
        CHECK(contains_portfolio(a, scaled, 1e-7));
        Portfolio lower(a3, {s.payoffs[0] - u(rng), s.payoffs[1] - u(rng), s.payoffs[2] - u(rng)});
        CHECK(contains_portfolio(a, lower, 1e-7));
    }
}

TEST_CASE("union and intersection of indicator halfspaces") {
    DCCone e0 = DCCone::halfspace(kBits, Normal::indicator(0, 2));
    DCCone e1 = DCCone::halfspace(kBits, Normal::indicator(1, 2));
    CHECK(equals_cone(unite(e0, e1), DCCone::noiseless(kBits)));
    CHECK(equals_cone(intersect(e0, e1), DCCone::nonpositive(kBits)));
    CHECK_THROWS_AS(unite(e0, DCCone::full(Alphabet::integers(3))), InputError);
}

TEST_CASE("disjoint sum embeds both factors") {
    DCCone a = DCCone::noiseless(kBits);
    DCCone b = DCCone::noiseless(Alphabet({"2"}));
    DCCone sum = disjoint_sum(a, b);
    CHECK(sum.alphabet() == Alphabet({"0", "1", "2"}));
    CHECK(equals_cone(sum, DCCone::noiseless(Alphabet({"0", "1", "2"}))));

    // membership oracle over random portfolios: either block admits the rest
    std::mt19937_64 rng(9);
    DCCone bsc = bsc_feedback_cone(0.25);
    DCCone pair = disjoint_sum(bsc, DCCone::nonpositive(Alphabet({"z"})));
    for (int i = 0; i < 1000; ++i) {
        Portfolio s = random_portfolio(rng, pair.alphabet(), 3.0);
        const bool via_a = contains_portfolio(bsc, Portfolio(kBits, {s.payoffs[0], s.payoffs[1]}));
        const bool via_b = s.payoffs[2] <= 1e-12;
        CHECK(contains_portfolio(pair, s) == (via_a || via_b));
    }
}

TEST_CASE("sum-channel embedding keeps large payoffs on the other block") {
    std::mt19937_64 rng(33);
    DCCone a = bsc_feedback_cone(0.25);
    DCCone b = DCCone::noiseless(Alphabet({"u", "v"}));
    DCCone sum = disjoint_sum(a, b);
    for (int i = 0; i < 300; ++i) {
        Portfolio s = random_portfolio(rng, kBits);
        // skip portfolios sitting within the scale-aware tolerance band
        const double margin =
            std::min(std::fabs(0.75 * s.payoffs[0] + 0.25 * s.payoffs[1]),
                     std::fabs(0.25 * s.payoffs[0] + 0.75 * s.payoffs[1]));
        if (margin < 1e-5) continue;
        Portfolio lifted(sum.alphabet(), {s.payoffs[0], s.payoffs[1], 100.0, 100.0});
        CHECK(contains_portfolio(sum, lifted) == contains_portfolio(a, s));
    }
}

TEST_CASE("auto-tagging on label collisions") {
    DCCone a = DCCone::nonpositive(kBits);
    DCCone sum = disjoint_sum(a, a);
    CHECK(sum.alphabet() == Alphabet({"1:0", "1:1", "2:0", "2:1"}));
}

TEST_CASE("duals of the primitive cones") {
    CHECK(equals_cone(dual(DCCone::empty(kBits)), DCCone::full(kBits)));
    CHECK(equals_cone(dual(DCCone::full(kBits)), DCCone::empty(kBits)));
    CHECK(equals_cone(dual(DCCone::nonpositive(kBits)), DCCone::noiseless(kBits)));
    CHECK(equals_cone(dual(DCCone::noiseless(kBits)), DCCone::nonpositive(kBits)));
    DCCone h = DCCone::halfspace(kBits, Normal({0.6, 0.4}));
    CHECK(equals_cone(dual(h), h));
}

TEST_CASE("dual algebra on random cones") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        Alphabet a(Alphabet::integers(2 + static_cast<int>(rng() % 3)));
        DCCone x = random_cone(rng, a, 3, 3);
        DCCone y = random_cone(rng, a, 3, 3);
        CHECK(equals_cone(dual(dual(x)), x));
        CHECK(equals_cone(dual(unite(x, y)), intersect(dual(x), dual(y))));
    }
}

TEST_CASE("pushforward merges normal mass") {
    Alphabet three = Alphabet::integers(3);
    Alphabet ab({"a", "b"});
    DCCone h = DCCone::halfspace(three, Normal({0.25, 0.25, 0.5}));
    SymbolMap f(three, ab, {0, 0, 1});
    DCCone pushed = pushforward(h, f);
    CHECK(equals_cone(pushed, DCCone::halfspace(ab, Normal({0.5, 0.5}))));

    DCCone same = pushforward(h, SymbolMap(three, three, {0, 1, 2}));
    CHECK(equals_cone(same, h));

    // constant map: noiseless collapses to the one-symbol nonpositive cone
    Alphabet z({"z"});
    DCCone collapsed = pushforward(DCCone::noiseless(kBits), SymbolMap(kBits, z, {0, 0}));
    CHECK(equals_cone(collapsed, DCCone::nonpositive(z)));
}

TEST_CASE("pushforward matches definitional membership") {
    std::mt19937_64 rng(41);
    Alphabet four = Alphabet::integers(4);
    Alphabet two = Alphabet::integers(2);
    for (int rep = 0; rep < 50; ++rep) {
        DCCone a = random_cone(rng, four, 3, 3);
        std::vector<int> img(4);
        for (int& v : img) v = static_cast<int>(rng() % 2);
        SymbolMap f(four, two, img);
        DCCone pushed = pushforward(a, f);
        for (int i = 0; i < 40; ++i) {
            Portfolio b = random_portfolio(rng, two);
            std::vector<double> composed(4);
            for (int y = 0; y < 4; ++y) composed[static_cast<size_t>(y)] = b.payoffs[static_cast<size_t>(f(y))];
            CHECK(contains_portfolio(pushed, b) ==
                  contains_portfolio(a, Portfolio(four, composed)));
        }
    }
}

TEST_CASE("min-plus of indicator halfspaces is the mixed halfspace") {
    DCCone e0 = DCCone::halfspace(kBits, Normal::indicator(0, 2));
    DCCone e1 = DCCone::halfspace(kBits, Normal::indicator(1, 2));
    CHECK(equals_cone(minplus(e0, e1, 0.5), DCCone::halfspace(kBits, Normal({0.5, 0.5}))));

    DCCone a = bsc_feedback_cone(0.3);
    CHECK(equals_cone(minplus(a, DCCone::nonpositive(kBits), 0.0), a));
    CHECK(equals_cone(minplus(a, DCCone::nonpositive(kBits), 1.0), DCCone::nonpositive(kBits)));
    CHECK(minplus(a, DCCone::empty(kBits), 0.5).is_empty_cone());
    CHECK_THROWS_AS(minplus(a, a, 1.5), InputError);
}

TEST_CASE("robustified noiseless equals the generator requirement") {
    DCCone rob = robustify(DCCone::noiseless(kBits), 0.1);
    Portfolio g0(kBits, {-0.1, 0.9});
    Portfolio g1(kBits, {0.9, -0.1});
    DCCone gen = DCCone::from_generators(kBits, {g0, g1});
    CHECK(equals_cone(rob, gen));

    // t-elimination membership oracle on random portfolios
    std::mt19937_64 rng(55);
    DCCone base = DCCone::noiseless(kBits);
    for (int i = 0; i < 10000; ++i) {
        Portfolio s = random_portfolio(rng, kBits);
        const double shift = 0.1 / 0.9 * std::max(s.payoffs[0], s.payoffs[1]);
        Portfolio lifted(kBits, {s.payoffs[0] + shift, s.payoffs[1] + shift});
        CHECK(contains_portfolio(rob, s, 1e-7) == contains_portfolio(base, lifted, 1e-7));
    }
}

TEST_CASE("min-plus membership agrees with the shift-bracket oracle") {
    std::mt19937_64 rng(63);
    Alphabet a3 = Alphabet::integers(3);
    std::uniform_real_distribution<double> lam(0.05, 0.95);
    for (int rep = 0; rep < 30; ++rep) {
        DCCone a = random_cone(rng, a3, 2, 2);
        DCCone b = random_cone(rng, a3, 2, 2);
        const double l = lam(rng);
        DCCone mixed = minplus(a, b, l);
        for (int i = 0; i < 40; ++i) {
            Portfolio s = random_portfolio(rng, a3);
            CHECK(contains_portfolio(mixed, s, 1e-7) == minplus_member_oracle(a, b, l, s, 1e-7));
        }
    }
}

TEST_CASE("full partners dominate a strict mixture") {
    DCCone full = DCCone::full(kBits);
    DCCone half = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    CHECK(equals_cone(minplus(full, half, 0.5), full));
    CHECK(equals_cone(minplus(half, full, 0.5), full));
    // shift-bracket oracle confirms arbitrage
    CHECK(minplus_member_oracle(full, half, 0.5, Portfolio(kBits, {5.0, 5.0})));
}

TEST_CASE("pruning never changes the denoted set") {
    std::mt19937_64 rng(77);
    Alphabet a3 = Alphabet::integers(3);
    for (int rep = 0; rep < 20; ++rep) {
        DCCone a = random_cone(rng, a3, 3, 3);
        DCCone b = unite(a, a);  // duplicated cells
        DCCone pruned = prune(b);
        CHECK(pruned.cells().size() <= a.cells().size());
        CHECK(equals_cone(pruned, a));
    }
}
