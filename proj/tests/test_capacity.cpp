#include <cmath>
#include <random>

#include "doctest.h"
#include "dcgame/capacity.hpp"
#include "dcgame/channels.hpp"
#include "dcgame/errors.hpp"
#include "test_support.hpp"

using namespace dcgame;
using dcgame::testing::random_cone;

namespace {

const Alphabet kBits = Alphabet::integers(2);

}  // namespace

TEST_CASE("requirement value closed form") {
    CHECK(requirement_value(2, 0.5) == doctest::Approx(0.0));
    CHECK(requirement_value(4, 0.1) == doctest::Approx(1.372508).epsilon(1e-5));
    CHECK(requirement_value(1, 0.3) == doctest::Approx(0.0));
    CHECK_THROWS_AS(requirement_value(2, 1.5), InputError);
}

TEST_CASE("degenerate cones") {
    CHECK(info_capacity(DCCone::empty(kBits)).value == -std::numeric_limits<double>::infinity());
    CHECK(info_capacity(DCCone::full(kBits)).value == std::numeric_limits<double>::infinity());
}

TEST_CASE("non-informative cones have zero capacity") {
    CapacityResult r = info_capacity(DCCone::nonpositive(kBits), CapacityMethod::Minimax, 1e-6);
    CHECK(r.value <= 1e-6);
    CapacityResult h =
        info_capacity(DCCone::halfspace(kBits, Normal({0.3, 0.7})), CapacityMethod::Minimax, 1e-6);
    CHECK(h.value <= 1e-6);
}

TEST_CASE("shannon capacity of the feedback cone") {
    for (double beta : {0.11, 0.25}) {
        DCCone cone = bsc_feedback_channel(beta).range_cone();
        const double expected = 1.0 - binary_entropy(beta);
        CapacityResult ba = info_capacity(cone, CapacityMethod::BlahutArimoto, 1e-6);
        CapacityResult mm = info_capacity(cone, CapacityMethod::Minimax, 1e-4);
        CHECK(ba.value == doctest::Approx(expected).epsilon(1e-4));
        CHECK(std::fabs(mm.value - ba.value) <= 2e-3);
    }
}

TEST_CASE("noiseless cone carries one bit") {
    CapacityResult r = info_capacity(DCCone::noiseless(kBits), CapacityMethod::Auto, 1e-6);
    CHECK(r.method == "blahut_arimoto");
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("requirement cone matches the closed form") {
    for (auto [L, eps] : std::vector<std::pair<int, double>>{{2, 0.05}, {2, 0.5}, {4, 0.1}}) {
        DCCone cone = requirement_cone(L, eps);
        CapacityResult r = info_capacity(cone, CapacityMethod::Minimax, 1e-4);
        CHECK(r.value == doctest::Approx(requirement_value(L, eps)).epsilon(0).scale(1).epsilon(2e-3));
    }
}

TEST_CASE("reported prior reproduces the value") {
    DCCone cone = requirement_cone(2, 0.1);
    CapacityResult r = info_capacity(cone, CapacityMethod::Minimax, 1e-4);
    const double again = capacity_objective(cone, r.prior.weights(), 1e-7);
    CHECK(std::fabs(again - r.value) <= 1e-4);
    CHECK(r.posteriors.size() == cone.cells().size());
}

TEST_CASE("zero law on random cones") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 25; ++rep) {
        Alphabet a = Alphabet::integers(2 + static_cast<int>(rng() % 2));
        DCCone cone = random_cone(rng, a, 3, 3);
        const bool informative = is_informative(cone);
        CapacityResult r = info_capacity(cone, CapacityMethod::Minimax, 1e-5);
        if (informative) CHECK(r.value > 1e-4);
        else CHECK(r.value <= 1e-4);
    }
}

TEST_CASE("monotone under containment") {
    std::mt19937_64 rng(103);
    for (int rep = 0; rep < 10; ++rep) {
        Alphabet a = Alphabet::integers(2 + static_cast<int>(rng() % 2));
        DCCone x = random_cone(rng, a, 2, 2);
        DCCone y = random_cone(rng, a, 2, 2);
        DCCone big = unite(x, y);  // x subseteq big by construction
        const double ix = info_capacity(x, CapacityMethod::Minimax, 1e-4).value;
        const double ibig = info_capacity(big, CapacityMethod::Minimax, 1e-4).value;
        CHECK(ix <= ibig + 2e-3);
    }
}

TEST_CASE("additivity over the semidirect product") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 6; ++rep) {
        Alphabet ay = Alphabet::integers(2 + static_cast<int>(rng() % 2));
        Alphabet az = Alphabet::integers(2 + static_cast<int>(rng() % 2));
        // single-normal cells so the product stays explicit
        std::vector<Cell> cy, cz;
        const int ky = 1 + static_cast<int>(rng() % 3);
        const int kz = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < ky; ++i)
            cy.push_back(Cell{{Normal(dcgame::testing::random_distribution(rng, ay.size()))}});
        for (int i = 0; i < kz; ++i)
            cz.push_back(Cell{{Normal(dcgame::testing::random_distribution(rng, az.size()))}});
        DCCone a(ay, cy), b(az, cz);
        const double ia = info_capacity(a, CapacityMethod::BlahutArimoto, 1e-7).value;
        const double ib = info_capacity(b, CapacityMethod::BlahutArimoto, 1e-7).value;
        const double iab =
            info_capacity(semidirect_explicit(a, b), CapacityMethod::BlahutArimoto, 1e-7).value;
        CHECK(iab == doctest::Approx(ia + ib).epsilon(0).scale(1).epsilon(2e-3));
    }
}

TEST_CASE("methods agree on random channel-shaped cones") {
    std::mt19937_64 rng(113);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 2 + static_cast<int>(rng() % 3);
        Alphabet a = Alphabet::integers(d);
        const int rows = 1 + static_cast<int>(rng() % 4);
        std::vector<Cell> cells;
        for (int i = 0; i < rows; ++i)
            cells.push_back(Cell{{Normal(dcgame::testing::random_distribution(rng, d))}});
        DCCone cone(a, cells);
        const double ba = info_capacity(cone, CapacityMethod::BlahutArimoto, 1e-7).value;
        const double mm = info_capacity(cone, CapacityMethod::Minimax, 1e-4).value;
        CHECK(std::fabs(ba - mm) <= 2e-3);
    }
}

TEST_CASE("grid oracle agrees with minimax") {
    std::mt19937_64 rng(109);
    CapacityOptions opts;
    opts.grid_step = 0.002;
    for (int rep = 0; rep < 4; ++rep) {
        Alphabet a = Alphabet::integers(2 + static_cast<int>(rng() % 2));
        DCCone cone = random_cone(rng, a, 2, 2);
        const double mm = info_capacity(cone, CapacityMethod::Minimax, 1e-5).value;
        const double grid = info_capacity(cone, CapacityMethod::OracleGrid, 1e-5, opts).value;
        CHECK(std::fabs(mm - grid) <= 5e-3);
        CHECK(mm <= grid + 1e-6);  // the grid value is an upper bound
    }
}

TEST_CASE("oracle grid rejects large alphabets") {
    CHECK_THROWS_AS(info_capacity(DCCone::nonpositive(Alphabet::integers(4)),
                                  CapacityMethod::OracleGrid, 1e-5),
                    InputError);
}

TEST_CASE("hull reduction validated against sampled portfolios") {
    DCCone fano = requirement_cone(4, 0.1);
    CapacityResult r = info_capacity(fano, CapacityMethod::Minimax, 1e-4);
    CapacityValidation v = validate_capacity_reduction(fano, r, 16, 5, 2e-3);
    CHECK(v.ok);
    CHECK(v.sample_excess <= 2e-3);
    CHECK(v.support_shortfall <= 2e-3);

    DCCone bsc = bsc_feedback_channel(0.25).range_cone();
    CapacityResult rb = info_capacity(bsc, CapacityMethod::Minimax, 1e-4);
    CapacityValidation vb = validate_capacity_reduction(bsc, rb, 16, 7, 2e-3);
    CHECK(vb.ok);
}

TEST_CASE("kl projection onto a halfspace") {
    // project uniform onto <p,a> <= 0 with a favoring the first symbol
    std::vector<double> q{0.5, 0.5};
    std::vector<double> a{1.0, -1.0};
    HalfspaceProjection proj = kl_project_halfspace(q, a);
    CHECK(proj.feasible);
    CHECK(proj.value == doctest::Approx(0.0));

    std::vector<double> b{1.0, 3.0};  // no distribution satisfies the constraint
    HalfspaceProjection bad = kl_project_halfspace(q, b);
    CHECK_FALSE(bad.feasible);

    // active constraint: target (0.9, 0.1), constraint mean <= 0 under (1,-1)
    std::vector<double> skew{0.9, 0.1};
    HalfspaceProjection act = kl_project_halfspace(skew, a);
    CHECK(act.p[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(act.value == doctest::Approx(kl_divergence_bits(act.p, skew)).epsilon(1e-9));
}
