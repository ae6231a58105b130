#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <coarse/oracle.hpp>

#include "test_util.hpp"

using namespace coarse;

TEST_CASE("minimum multiplicity on trivial spaces") {
    const auto one = validate_space({{0.0}});
    CHECK(min_multiplicity_exhaustive(one, 5.0, 0.0).multiplicity == 1);

    const auto line = gen_grid(1, 10, GridNorm::linf);
    CHECK(min_multiplicity_exhaustive(line, 9.0, 0.0).multiplicity == 1);
}

TEST_CASE("minimum multiplicity on the 10-point line at S=4, L=1") {
    const auto line = gen_grid(1, 10, GridNorm::linf);
    const auto result = min_multiplicity_exhaustive(line, 4.0, 1.0);
    CHECK(result.multiplicity == 2);

    // the returned cover actually attains the bounds
    const auto report = verify_cover(line, result.cover, 1, 4.0, 1.0);
    CHECK(report.pass);
}

TEST_CASE("oracle detects infeasible scales") {
    const auto two = validate_space({{0, 1}, {1, 0}});
    // singletons are the only sets of diameter 0, and their margin is 1
    CHECK(min_multiplicity_exhaustive(two, 0.0, 0.5).multiplicity == 1);
    try {
        min_multiplicity_exhaustive(two, 0.0, 1.0);
        FAIL("no cover should exist");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_cover_exists);
    }
}

TEST_CASE("oracle budgets") {
    const auto big = gen_grid(1, 13, GridNorm::linf);
    try {
        min_multiplicity_exhaustive(big, 3.0, 1.0);
        FAIL("point budget ignored");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::budget_exceeded);
    }

    OracleBudget tiny;
    tiny.max_candidate_sets = 4;
    const auto line = gen_grid(1, 6, GridNorm::linf);
    CHECK_THROWS_AS(min_multiplicity_exhaustive(line, 2.0, 0.5, tiny), Error);
}

TEST_CASE("oracle optimum is monotone in the scale pair") {
    std::mt19937 rng(10001);
    for (int trial = 0; trial < 10; ++trial) {
        const auto space = testutil::random_graph_space(rng, 2, 7);
        std::uniform_int_distribution<int> sd(1, 6);
        const double S = sd(rng);
        const double L = 1.0;
        int base;
        try {
            base = min_multiplicity_exhaustive(space, S, L).multiplicity;
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::no_cover_exists);
            continue;
        }
        // enlarging S cannot hurt
        CHECK(min_multiplicity_exhaustive(space, S + 2.0, L).multiplicity <= base);
        // shrinking L cannot hurt
        CHECK(min_multiplicity_exhaustive(space, S, 0.5).multiplicity <= base);
    }
}

TEST_CASE("oracle search is deterministic") {
    const auto line = gen_grid(1, 9, GridNorm::linf);
    const auto a = min_multiplicity_exhaustive(line, 4.0, 1.0);
    const auto b = min_multiplicity_exhaustive(line, 4.0, 1.0);
    CHECK(a.multiplicity == b.multiplicity);
    CHECK(a.cover == b.cover);
}

TEST_CASE("independent scan agrees with the primary verifier") {
    std::mt19937 rng(10002);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testutil::random_graph_space(rng, 2, 12);
        const auto family = testutil::random_family(rng, space, trial % 2 == 0);
        std::uniform_int_distribution<int> rd(1, 6);
        const double R = rd(rng);
        const double eps = (trial % 3 == 0) ? 0.5 : (trial % 3 == 1 ? 1.0 : 3.0);
        const std::optional<int> n =
            trial % 4 == 0 ? std::nullopt : std::optional<int>(trial % 4 - 1);

        const auto primary = verify_witness(space, family, R, eps, n);
        const auto oracle = independent_pair_scan(space, family, R, eps, n);
        CHECK(primary == oracle);
    }
}

TEST_CASE("ball inclusion agrees with the margin formulation") {
    std::mt19937 rng(10003);
    for (int trial = 0; trial < 60; ++trial) {
        const auto space = testutil::random_graph_space(rng, 2, 12);
        const auto cover = testutil::random_cover(rng, space.size(), 4);
        std::uniform_int_distribution<int> ld(0, 7);
        const double L = ld(rng);
        CHECK(ball_inclusion_scan(space, cover, L) == is_lebesgue_at_least(space, cover, L));
    }

    // both sides reject non-covers the same way
    const auto line = gen_grid(1, 4, GridNorm::linf);
    const Cover partial({PointSet::of_sorted({0, 1})});
    CHECK_THROWS_AS(ball_inclusion_scan(line, partial, 1.0), NotACoverError);
    CHECK_THROWS_AS(is_lebesgue_at_least(line, partial, 1.0), NotACoverError);
}

TEST_CASE("single-element whole-space cover is included at any radius") {
    const auto line = gen_grid(1, 6, GridNorm::linf);
    const Cover whole({PointSet::of_sorted({0, 1, 2, 3, 4, 5})});
    CHECK(ball_inclusion_scan(line, whole, 1e9));
}

TEST_CASE("pair scan budget") {
    OracleBudget tiny;
    tiny.max_points = 1;
    const auto line = gen_grid(1, 30, GridNorm::linf);
    WitnessFamily family;
    family.radius_S = 0.0;
    for (Point x = 0; x < 30; ++x)
        family.sets.push_back(WitnessSet::from_pairs({{x, 1}}));
    try {
        independent_pair_scan(line, family, 1.0, 1.0, std::nullopt, tiny);
        FAIL("budget ignored");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::budget_exceeded);
    }
}
