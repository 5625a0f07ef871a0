#include <cmath>
#include <random>

#include "doctest.h"
#include "dcgame/cone.hpp"
#include "dcgame/errors.hpp"
#include "test_support.hpp"

using namespace dcgame;
using dcgame::testing::coupling_value;
using dcgame::testing::random_cone;
using dcgame::testing::random_portfolio;

namespace {

const Alphabet kBits = Alphabet::integers(2);

DCCone bsc_feedback_cone(double beta) {
    return DCCone(kBits, {Cell{{Normal({1.0 - beta, beta})}}, Cell{{Normal({beta, 1.0 - beta})}}});
}

}  // namespace

TEST_CASE("semidirect of halfspaces is the product halfspace") {
    DCCone p = DCCone::halfspace(kBits, Normal({0.7, 0.3}));
    DCCone q = DCCone::halfspace(kBits, Normal({0.2, 0.8}));
    DCCone prod = semidirect_explicit(p, q);
    REQUIRE(prod.cells().size() == 1);
    const Normal& n = prod.cells()[0].normals[0];
    CHECK(n[0] == doctest::Approx(0.14));
    CHECK(n[1] == doctest::Approx(0.56));
    CHECK(n[2] == doctest::Approx(0.06));
    CHECK(n[3] == doctest::Approx(0.24));
}

TEST_CASE("semidirect branch count for the feedback cone") {
    DCCone a = bsc_feedback_cone(0.25);
    DCCone prod = semidirect_explicit(a, a);
    CHECK(prod.cells().size() == 8);  // 2 first-step cells x 2^2 branch maps
    CHECK(prod.alphabet().size() == 4);

    // spot-check membership against the lazy test
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        Portfolio s = random_portfolio(rng, prod.alphabet());
        CHECK(contains_portfolio(prod, s, 1e-7) == member_semidirect(a, a, s, {1e-7}));
    }
}

TEST_CASE("explicit semidirect rejects multi-normal cells") {
    DCCone multi = DCCone::nonpositive(kBits);
    DCCone h = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    CHECK_THROWS_AS(semidirect_explicit(multi, h), InputError);
    CHECK_THROWS_AS(semidirect_explicit(h, multi), InputError);
}

TEST_CASE("product membership matches the coupling oracle on halfspaces") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> pw = dcgame::testing::random_distribution(rng, 2);
        std::vector<double> qw = dcgame::testing::random_distribution(rng, 2);
        DCCone p = DCCone::halfspace(kBits, Normal(pw));
        DCCone q = DCCone::halfspace(kBits, Normal(qw));
        Alphabet prod = Alphabet::tuple(kBits, kBits);
        for (int i = 0; i < 25; ++i) {
            Portfolio s = random_portfolio(rng, prod);
            const double value = coupling_value(pw, qw, s.payoffs);
            if (std::fabs(value) < 1e-7) continue;  // boundary: either answer is fine
            CHECK(member_product(p, q, s, {1e-9}) == (value <= 0.0));
        }
    }
}

TEST_CASE("adversarial coupling beats both diagonal bets") {
    // the adversary couples the outputs after seeing the portfolio, so both
    // the bet on agreement and the bet on disagreement carry positive value
    // under the worst coupling and stay outside the product cone
    DCCone u = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    Alphabet prod = Alphabet::tuple(kBits, kBits);
    Portfolio disagree(prod, {-1.0, 1.0, 1.0, -1.0});
    Portfolio agree(prod, {1.0, -1.0, -1.0, 1.0});
    CHECK(coupling_value({0.5, 0.5}, {0.5, 0.5}, disagree.payoffs) == doctest::Approx(1.0));
    CHECK(coupling_value({0.5, 0.5}, {0.5, 0.5}, agree.payoffs) == doctest::Approx(1.0));
    CHECK_FALSE(member_product(u, u, disagree, {1e-9}));
    CHECK_FALSE(member_product(u, u, agree, {1e-9}));
    // the semidirect product prices both: the second portfolio may depend on
    // the first outcome
    CHECK(member_semidirect(u, u, disagree, {1e-6}));
    CHECK(member_semidirect(u, u, agree, {1e-6}));
}

TEST_CASE("minkowski sum membership") {
    DCCone np = DCCone::nonpositive(kBits);
    CHECK(member_minkowski_sum(np, np, Portfolio(kBits, {-1.0, -1.0})));
    CHECK_FALSE(member_minkowski_sum(np, np, Portfolio(kBits, {0.1, -1.0})));

    // adding the full cone gives arbitrage
    CHECK(member_minkowski_sum(np, DCCone::full(kBits), Portfolio(kBits, {7.0, 7.0})));
}

TEST_CASE("implication cone") {
    DCCone a = bsc_feedback_cone(0.25);
    // A -> A degenerates to the nonpositive cone
    CHECK(member_implication(a, a, Portfolio(kBits, {-1.0, -1.0})));
    CHECK_FALSE(member_implication(a, a, Portfolio(kBits, {0.1, 0.0})));

    // B strictly bigger than A: portfolios of B outside A appear
    DCCone half = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    DCCone noiseless = DCCone::noiseless(kBits);
    Portfolio forced(kBits, {3.0, -1.0});
    CHECK_FALSE(contains_portfolio(half, forced));
    CHECK(contains_portfolio(noiseless, forced));
    CHECK(member_implication(half, noiseless, forced));
    // but nothing outside B enters the implication
    CHECK_FALSE(member_implication(half, noiseless, Portfolio(kBits, {1.0, 1.0})));
}

TEST_CASE("containment examples") {
    std::mt19937_64 rng(19);
    Alphabet a3 = Alphabet::integers(3);
    for (int rep = 0; rep < 20; ++rep) {
        DCCone a = random_cone(rng, a3, 3, 3);
        CHECK(contains_cone(a, a).contained);
    }

    DCCone half = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    DCCone noiseless = DCCone::noiseless(kBits);
    CHECK(contains_cone(noiseless, half).contained);
    ContainsResult r = contains_cone(half, noiseless);
    CHECK_FALSE(r.contained);
    REQUIRE(r.witness.has_value());
    // witness lies in the noiseless cone but has positive average
    CHECK(contains_portfolio(noiseless, *r.witness, 1e-7));
    CHECK(r.witness->payoffs[0] + r.witness->payoffs[1] > 1e-9);
}

TEST_CASE("containment versus the empty and full cones") {
    DCCone half = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    CHECK(contains_cone(half, DCCone::empty(kBits)).contained);
    CHECK_FALSE(contains_cone(DCCone::empty(kBits), half).contained);
    CHECK(contains_cone(DCCone::full(kBits), half).contained);
    CHECK_FALSE(contains_cone(half, DCCone::full(kBits)).contained);
}

TEST_CASE("informativeness") {
    CHECK_FALSE(is_informative(DCCone::halfspace(kBits, Normal({0.5, 0.5}))));
    CHECK_FALSE(is_informative(DCCone::nonpositive(kBits)));
    CHECK(is_informative(bsc_feedback_cone(0.25)));
    CHECK(is_informative(DCCone::noiseless(kBits)));
    CHECK(is_informative(DCCone::full(kBits)));
    CHECK_FALSE(is_informative(DCCone::empty(kBits)));

    // witness certifies the halfspace cover
    DCCone a = DCCone(kBits, {Cell{{Normal({0.6, 0.4}), Normal({0.5, 0.5})}},
                              Cell{{Normal({0.55, 0.45})}}});
    auto w = noninformativeness_witness(a);
    REQUIRE(w.has_value());
    DCCone cover = DCCone::halfspace(kBits, Normal(*w));
    CHECK(contains_cone(cover, a).contained);
}

TEST_CASE("deterministic degradedness") {
    // identity map: B subseteq A implies degraded
    DCCone a = bsc_feedback_cone(0.25);
    DCCone b = DCCone::halfspace(kBits, Normal({0.75, 0.25}));
    CHECK(deterministically_degraded(b, a));

    // merging map from the pushforward example
    Alphabet three = Alphabet::integers(3);
    DCCone big = DCCone::halfspace(three, Normal({0.25, 0.25, 0.5}));
    DCCone small = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    auto f = deterministic_degrading_map(small, big);
    REQUIRE(f.has_value());
    CHECK(contains_cone(pushforward(big, *f), small).contained);

    // a cone strictly larger than every pushforward is not degraded
    CHECK_FALSE(deterministically_degraded(DCCone::full(kBits), small));
}

TEST_CASE("nondeterministic degradedness for a supplied kernel") {
    // degrading the 3-symbol halfspace onto 2 symbols through per-symbol
    // halfspace kernels reproduces deterministic merging
    Alphabet three = Alphabet::integers(3);
    DCCone big = DCCone::halfspace(three, Normal({0.25, 0.25, 0.5}));
    std::vector<DCCone> kernels{DCCone::halfspace(kBits, Normal::indicator(0, 2)),
                                DCCone::halfspace(kBits, Normal::indicator(0, 2)),
                                DCCone::halfspace(kBits, Normal::indicator(1, 2))};
    ConeKernel f(three, kernels);
    DCCone small = DCCone::halfspace(kBits, Normal({0.5, 0.5}));
    CHECK(nondeterministically_degraded(small, big, f));

    // informative kernels are rejected up front
    std::vector<DCCone> bad{DCCone::noiseless(kBits), DCCone::noiseless(kBits),
                            DCCone::noiseless(kBits)};
    CHECK_THROWS_AS(nondeterministically_degraded(small, big, ConeKernel(three, bad)),
                    InputError);
}

TEST_CASE("de-morgan and involution survive products") {
    std::mt19937_64 rng(29);
    Alphabet a2 = Alphabet::integers(2);
    for (int rep = 0; rep < 10; ++rep) {
        DCCone a = random_cone(rng, a2, 2, 2);
        DCCone b = random_cone(rng, a2, 2, 2);
        DCCone inter = intersect(a, b);
        CHECK(equals_cone(dual(inter), dual(inter)));
        CHECK(equals_cone(dual(dual(inter)), inter));
    }
}
