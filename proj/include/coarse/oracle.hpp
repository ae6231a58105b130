#ifndef COARSE_ORACLE_HPP_
#define COARSE_ORACLE_HPP_

#include <optional>

#include <coarse/cover.hpp>
#include <coarse/witness.hpp>

namespace coarse {

/// Limits for the exhaustive checkers. They exist to validate the fast
/// paths on tiny instances, so the defaults are deliberately small.
struct OracleBudget {
    int max_points = 12;
    int max_candidate_sets = 8192;
    double time_limit_seconds = 60.0;
};

struct MinMultiplicityResult {
    int multiplicity = 0;
    Cover cover;  // a witnessing family attaining the optimum
};

/// Smallest k such that some cover with mesh <= S and min_margin > L has
/// multiplicity <= k, by exhaustive search over all subsets of diameter
/// <= S (size-then-lexicographic order, single-threaded, deterministic).
/// Throws Errc::no_cover_exists when no multiplicity suffices and
/// Errc::budget_exceeded past any budget limit.
MinMultiplicityResult min_multiplicity_exhaustive(const FiniteMetricSpace& space, double S,
                                                  double L, const OracleBudget& budget = {});

/// Naive twin of verify_witness: double loops and std::set arithmetic,
/// sharing no code with the primary path. Must agree field-for-field.
WitnessReport independent_pair_scan(const FiniteMetricSpace& space, const WitnessFamily& family,
                                    double R, double epsilon_bound,
                                    std::optional<int> n = std::nullopt,
                                    const OracleBudget& budget = {});

/// Literal reading of the Lebesgue condition: every closed L-ball is
/// contained in some element. Must agree with is_lebesgue_at_least.
bool ball_inclusion_scan(const FiniteMetricSpace& space, const Cover& cover, double L);

}  // namespace coarse

#endif  // COARSE_ORACLE_HPP_
