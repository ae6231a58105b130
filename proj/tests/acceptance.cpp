// Acceptance suite: one case per criterion, each printing a pass/fail line
// with its runtime. Derived quantities are re-checked with independent set
// arithmetic where the criterion calls for it.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <utility>

#include <coarse/cover.hpp>
#include <coarse/metric.hpp>
#include <coarse/oracle.hpp>
#include <coarse/witness.hpp>

#include "test_util.hpp"

using namespace coarse;

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report_line(int criterion, bool ok, const char* label, double seconds) {
    std::printf("criterion %d [%s] %s (%.2fs)\n", criterion, ok ? "PASS" : "FAIL", label,
                seconds);
    std::fflush(stdout);
}

using PairSet = std::set<std::pair<Point, Level>>;

PairSet as_std_set(const WitnessSet& s) {
    PairSet out;
    for (const auto& pl : s.pairs()) out.insert({pl.point, pl.level});
    return out;
}

// Independent of the library's merge-based arithmetic.
std::pair<long long, long long> naive_inter_symdiff(const PairSet& a, const PairSet& b) {
    long long inter = 0, sym = 0;
    for (const auto& x : a) {
        if (b.count(x))
            ++inter;
        else
            ++sym;
    }
    for (const auto& x : b)
        if (!a.count(x)) ++sym;
    return {inter, sym};
}

// The 501-point forward pipeline shared by criteria 2, 3, and 7.
struct ForwardPipeline {
    FiniteMetricSpace space = gen_grid(1, 501, GridNorm::linf);
    double R = 5.0;
    double epsilon = 0.5;
    int n = 1;
    double L = choose_scale(R, epsilon, n);
    Cover cover = brick_cover(space, 72);
    WitnessFamily family = cover_to_witness(space, cover, R, L);
};

const ForwardPipeline& pipeline() {
    static const ForwardPipeline p;
    return p;
}

}  // namespace

TEST_CASE("criterion 1: brick cover measurements on the 100x100 grid") {
    Stopwatch timer;
    const auto space = gen_grid(2, 100, GridNorm::linf);
    const auto cover = brick_cover(space, 10);

    const int mult = multiplicity(space, cover);
    const double m = mesh(space, cover);
    const bool lebesgue = is_lebesgue_at_least(space, cover, 4.0);
    const bool oracle_agrees = ball_inclusion_scan(space, cover, 4.0);

    const bool ok = mult == 3 && m <= 29.0 && lebesgue && oracle_agrees;
    const double secs = timer.seconds();
    report_line(1, ok && secs < 10.0, "brick cover measurements (2-D grid, q=10)", secs);

    CHECK(mult == 3);
    CHECK(m <= 29.0);
    CHECK(lebesgue);
    CHECK(oracle_agrees);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 2: forward pipeline lands under epsilon with room") {
    Stopwatch timer;
    const auto& p = pipeline();

    const bool scale_ok = p.L == 35.0;
    const bool margin_ok = is_lebesgue_at_least(p.space, p.cover, p.L);

    const auto report = verify_witness(p.space, p.family, p.R, p.epsilon, p.n);
    const bool verifier_ok = report.pass && report.ratio_violations.empty() &&
                             report.support_violations.empty() &&
                             report.projection_violations.empty();

    // Exhaustive close-pair scan with independent set arithmetic.
    long long checked = 0;
    bool bounds_ok = true;
    for (Point x = 0; x < p.space.size() && bounds_ok; ++x) {
        const auto ax = as_std_set(p.family.sets[x]);
        for (Point y = x + 1; y < p.space.size(); ++y) {
            if (p.space.distance(x, y) > p.R) continue;
            ++checked;
            const auto [inter, sym] = naive_inter_symdiff(ax, as_std_set(p.family.sets[y]));
            if (sym > 3 || inter < 7) {
                bounds_ok = false;
                break;
            }
        }
    }

    const bool ok = scale_ok && margin_ok && verifier_ok && bounds_ok;
    const double secs = timer.seconds();
    report_line(2, ok && secs < 30.0, "cover-to-witness pipeline at R=5, eps=0.5, n=1", secs);

    CHECK(scale_ok);
    CHECK(margin_ok);
    CHECK(verifier_ok);
    CHECK(report.max_projection <= 2);
    CHECK(report.max_close_sym_diff <= 3);
    CHECK(bounds_ok);
    CHECK(checked == report.close_pairs_checked);
    CHECK(secs < 30.0);
}

TEST_CASE("criterion 3: certificate for the derived cover") {
    Stopwatch timer;
    const auto& p = pipeline();

    const auto cert = certify_c_implies_a(p.space, p.family, p.R, p.n);
    const bool mult_ok = cert.multiplicity <= p.n + 1;
    const bool mesh_ok = cert.mesh <= 2.0 * p.family.radius_S;
    const bool premise_strict = cert.premise.worst_ratio < 1.0 / (p.n + 1);

    // Direct inclusion check, not trusting the certificate's own scan.
    const auto derived = witness_to_cover(p.space, p.family);
    bool inclusion_ok = true;
    for (Point x = 0; x < p.space.size() && inclusion_ok; ++x) {
        const auto element_index = derived.element_of(derived.selected[x]);
        REQUIRE(element_index >= 0);
        const auto& element = derived.cover.element(element_index);
        for (Point y : closed_ball(p.space, x, p.R)) {
            if (!element.contains(y)) {
                inclusion_ok = false;
                break;
            }
        }
    }

    const bool ok = cert.pass && mult_ok && mesh_ok && premise_strict && inclusion_ok;
    const double secs = timer.seconds();
    report_line(3, ok, "witness-to-cover certificate at R=5, n=1", secs);

    CHECK(cert.pass);
    CHECK(mult_ok);
    CHECK(mesh_ok);
    CHECK(premise_strict);
    CHECK(inclusion_ok);
}

TEST_CASE("criterion 4: set identities on 1000 random pairs") {
    Stopwatch timer;
    std::mt19937 rng(20250809);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = testutil::random_witness_set(rng, 6, 8, 4);
        const auto b = testutil::random_witness_set(rng, 6, 8, 4);

        const auto arith = pair_set_arithmetic(a, b);
        const auto [inter, sym] = naive_inter_symdiff(as_std_set(a), as_std_set(b));

        const bool identity = arith.symmetric_difference == a.size() + b.size() - 2 * arith.intersection &&
                              arith.intersection == inter && arith.symmetric_difference == sym;
        const bool symmetry = variation_ratio(a, b) == variation_ratio(b, a);
        const bool reflexive = variation_ratio(a, a) == 0.0;
        if (!(identity && symmetry && reflexive)) ++failures;
    }
    const double secs = timer.seconds();
    report_line(4, failures == 0, "set identities over 1000 seeded pairs", secs);
    CHECK(failures == 0);
}

TEST_CASE("criterion 5: chain-table properties on 50 random covers") {
    Stopwatch timer;
    std::mt19937 rng(20250810);
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto space = testutil::random_graph_space(rng, 4, 60);
        const auto cover = testutil::random_cover(rng, space.size(), 5);
        std::uniform_int_distribution<int> step(1, 5);
        std::uniform_int_distribution<int> cap_dist(2, 8);
        const double R = step(rng);
        const Level cap = cap_dist(rng);
        const auto table = chain_length_table(space, cover, R, cap);

        for (std::size_t j = 0; j < cover.element_count(); ++j) {
            const auto& element = cover.element(j);
            for (Point x : element) {
                for (Point y = 0; y < space.size(); ++y) {
                    if (x == y || space.distance(x, y) > R) continue;
                    if (element.contains(y)) {
                        if (std::abs(table.length_at(cover, j, x) -
                                     table.length_at(cover, j, y)) > 1)
                            ++failures;
                    } else if (table.length_at(cover, j, x) != 1) {
                        ++failures;
                    }
                }
            }
        }
    }
    const double secs = timer.seconds();
    report_line(5, failures == 0, "1-Lipschitz and one-step exit over 50 covers", secs);
    CHECK(failures == 0);
}

TEST_CASE("criterion 6: oracle agreement") {
    Stopwatch timer;
    std::mt19937 rng(20250811);

    int report_mismatches = 0;
    int lebesgue_mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto space = testutil::random_graph_space(rng, 2, 12);

        const auto family = testutil::random_family(rng, space, trial % 2 == 0);
        std::uniform_int_distribution<int> rd(1, 6);
        const double R = rd(rng);
        const double eps = trial % 3 == 0 ? 0.5 : (trial % 3 == 1 ? 1.0 : 2.5);
        const std::optional<int> n =
            trial % 4 == 0 ? std::nullopt : std::optional<int>(trial % 4 - 1);
        if (verify_witness(space, family, R, eps, n) !=
            independent_pair_scan(space, family, R, eps, n))
            ++report_mismatches;

        const auto cover = testutil::random_cover(rng, space.size(), 4);
        std::uniform_int_distribution<int> ld(0, 6);
        const double L = ld(rng);
        if (ball_inclusion_scan(space, cover, L) != is_lebesgue_at_least(space, cover, L))
            ++lebesgue_mismatches;
    }

    const auto line = gen_grid(1, 10, GridNorm::linf);
    const int line_optimum = min_multiplicity_exhaustive(line, 4.0, 1.0).multiplicity;

    // Derived covers can never beat the oracle optimum at matched scales.
    int lower_bound_violations = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const auto space = testutil::random_graph_space(rng, 2, 9);
        const auto family = testutil::random_family(rng, space, true);
        const auto derived = witness_to_cover(space, family);
        const double derived_mesh = mesh(space, derived.cover);
        const auto margins = lebesgue_margin(space, derived.cover);
        const double matched_L =
            std::isinf(margins.min_margin) ? 1.0 : margins.min_margin / 2.0;
        const auto optimum = min_multiplicity_exhaustive(space, derived_mesh, matched_L);
        if (multiplicity(space, derived.cover) < optimum.multiplicity) ++lower_bound_violations;
    }

    const bool ok = report_mismatches == 0 && lebesgue_mismatches == 0 && line_optimum == 2 &&
                    lower_bound_violations == 0;
    const double secs = timer.seconds();
    report_line(6, ok && secs < 60.0, "oracle twins agree over 200 seeded instances", secs);

    CHECK(report_mismatches == 0);
    CHECK(lebesgue_mismatches == 0);
    CHECK(line_optimum == 2);
    CHECK(lower_bound_violations == 0);
    CHECK(secs < 60.0);
}

TEST_CASE("criterion 7: contrapositive ratios on 50 adversarial families") {
    Stopwatch timer;
    std::mt19937 rng(20250812);
    const auto& p = pipeline();
    const auto base_derived = witness_to_cover(p.space, p.family);

    int mutations = 0;
    int ratio_failures = 0;
    int missing_pair = 0;
    std::uniform_int_distribution<int> xs(0, p.space.size() - 2);
    std::uniform_int_distribution<int> ds(1, 5);
    while (mutations < 50) {
        const Point x = xs(rng);
        const Point y = std::min<Point>(p.space.size() - 1, x + ds(rng));
        const Point z = base_derived.selected[x];

        // Strip z's column out of A_y; skip pairs where that would empty the
        // set or change nothing.
        std::vector<PointLevel> remaining;
        for (const auto& pl : p.family.sets[y].pairs())
            if (pl.point != z) remaining.push_back(pl);
        if (remaining.empty() || remaining.size() == p.family.sets[y].pairs().size()) continue;

        WitnessFamily mutated = p.family;
        mutated.sets[y] = WitnessSet::from_pairs(std::move(remaining));

        const auto scan =
            scan_ball_inclusion(p.space, mutated, witness_to_cover(p.space, mutated), p.R);
        bool found = false;
        for (const auto& violation : scan.violations) {
            if (!(violation.ratio >= 1.0 / (p.n + 1))) ++ratio_failures;
            if (violation.x == x && violation.y == y) found = true;
        }
        if (!found) ++missing_pair;
        ++mutations;
    }

    const bool ok = ratio_failures == 0 && missing_pair == 0;
    const double secs = timer.seconds();
    report_line(7, ok, "violating pairs keep ratio >= 1/(n+1) over 50 mutations", secs);

    CHECK(mutations == 50);
    CHECK(ratio_failures == 0);
    CHECK(missing_pair == 0);
}
