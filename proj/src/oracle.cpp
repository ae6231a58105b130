#include <coarse/oracle.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace coarse {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchState {
    const std::vector<std::vector<int>>& good;  // per point: candidate ids good for it
    const std::vector<std::vector<Point>>& pool;
    int n = 0;
    int k = 0;
    Clock::time_point deadline;
    std::vector<int> membership;  // per point, among chosen sets
    std::vector<char> chosen;
    std::vector<int> solution;
};

bool backtrack(SearchState& st, int satisfied_from) {
    if (Clock::now() > st.deadline)
        throw Error(Errc::budget_exceeded, "oracle search hit the time limit");

    // First point not yet satisfied by a chosen good set.
    int target = -1;
    for (int x = satisfied_from; x < st.n; ++x) {
        bool ok = false;
        for (int id : st.good[x]) {
            if (st.chosen[id]) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            target = x;
            break;
        }
    }
    if (target < 0) return true;

    for (int id : st.good[target]) {
        if (st.chosen[id]) continue;
        bool fits = true;
        for (Point p : st.pool[id]) {
            if (st.membership[p] + 1 > st.k) {
                fits = false;
                break;
            }
        }
        if (!fits) continue;
        st.chosen[id] = 1;
        for (Point p : st.pool[id]) ++st.membership[p];
        st.solution.push_back(id);
        if (backtrack(st, target)) return true;
        st.solution.pop_back();
        for (Point p : st.pool[id]) --st.membership[p];
        st.chosen[id] = 0;
    }
    return false;
}

}  // namespace

MinMultiplicityResult min_multiplicity_exhaustive(const FiniteMetricSpace& space, double S,
                                                  double L, const OracleBudget& budget) {
    const int n = space.size();
    if (n > budget.max_points || n > 20)
        throw Error(Errc::budget_exceeded, "space too large for exhaustive search",
                    {n, budget.max_points, -1});
    if (S < 0.0) throw Error(Errc::invalid_argument, "mesh bound S must be >= 0");

    // Candidate pool: every non-empty subset of diameter <= S, ordered by
    // size then lexicographically by member list.
    std::vector<std::vector<Point>> pool;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Point> members;
        for (int p = 0; p < n; ++p)
            if (mask & (1u << p)) members.push_back(p);
        bool ok = true;
        for (std::size_t i = 0; i < members.size() && ok; ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (space.distance(members[i], members[j]) > S) {
                    ok = false;
                    break;
                }
        if (ok) pool.push_back(std::move(members));
        if (static_cast<int>(pool.size()) > budget.max_candidate_sets)
            throw Error(Errc::budget_exceeded, "candidate pool exceeds budget",
                        {static_cast<std::int64_t>(pool.size()), budget.max_candidate_sets, -1});
    }
    std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    // A candidate is good for x when it contains the whole closed L-ball of
    // x, i.e. dist(x, complement) > L. A point with no good candidate can
    // never meet the margin bound, no matter the multiplicity.
    std::vector<std::vector<int>> good(n);
    for (int id = 0; id < static_cast<int>(pool.size()); ++id) {
        std::vector<char> inside(n, 0);
        for (Point p : pool[id]) inside[p] = 1;
        for (Point x : pool[id]) {
            double nearest_outside = std::numeric_limits<double>::infinity();
            for (Point y = 0; y < n; ++y)
                if (!inside[y]) nearest_outside = std::min(nearest_outside, space.distance(x, y));
            if (nearest_outside > L) good[x].push_back(id);
        }
    }
    for (int x = 0; x < n; ++x)
        if (good[x].empty())
            throw Error(Errc::no_cover_exists,
                        "no admissible set contains the closed L-ball of a point", {x, -1, -1});

    SearchState st{good, pool, n, 0,
                   Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(budget.time_limit_seconds)),
                   std::vector<int>(n, 0), std::vector<char>(pool.size(), 0), {}};

    for (int k = 1; k <= n; ++k) {
        st.k = k;
        st.solution.clear();
        std::fill(st.membership.begin(), st.membership.end(), 0);
        std::fill(st.chosen.begin(), st.chosen.end(), 0);
        if (backtrack(st, 0)) {
            std::vector<PointSet> elements;
            std::sort(st.solution.begin(), st.solution.end());
            for (int id : st.solution) elements.push_back(PointSet::of_sorted(pool[id]));
            return {k, Cover(std::move(elements))};
        }
    }
    // Unreachable: one good set per point is a solution with k <= n.
    throw Error(Errc::no_cover_exists, "search exhausted without a cover");
}

WitnessReport independent_pair_scan(const FiniteMetricSpace& space, const WitnessFamily& family,
                                    double R, double epsilon_bound, std::optional<int> n,
                                    const OracleBudget& budget) {
    if (space.size() > budget.max_points * 20)
        throw Error(Errc::budget_exceeded, "space too large for the oracle scan",
                    {space.size(), budget.max_points * 20, -1});
    if (!(R > 0.0)) throw Error(Errc::invalid_argument, "R must be > 0");
    if (!(epsilon_bound > 0.0)) throw Error(Errc::invalid_argument, "epsilon bound must be > 0");
    detail::check_family(space, family);

    const int size = space.size();
    std::vector<std::set<std::pair<Point, Level>>> sets(size);
    for (int x = 0; x < size; ++x)
        for (const auto& pl : family.sets[x].pairs()) sets[x].insert({pl.point, pl.level});

    WitnessReport report;

    for (Point x = 0; x < size; ++x)
        for (const auto& [y, level] : sets[x])
            if (space.distance(x, y) > family.radius_S)
                report.support_violations.push_back({x, y, level});

    for (Point x = 0; x < size; ++x) {
        std::set<Point> proj;
        for (const auto& [p, level] : sets[x]) proj.insert(p);
        report.max_projection = std::max(report.max_projection, static_cast<int>(proj.size()));
        if (n && static_cast<int>(proj.size()) > *n + 1) report.projection_violations.push_back(x);
    }

    for (Point x = 0; x < size; ++x) {
        for (Point y = x + 1; y < size; ++y) {
            if (space.distance(x, y) > R) continue;
            ++report.close_pairs_checked;
            long long common = 0;
            for (const auto& pl : sets[x])
                if (sets[y].count(pl)) ++common;
            long long sym = 0;
            for (const auto& pl : sets[x])
                if (!sets[y].count(pl)) ++sym;
            for (const auto& pl : sets[y])
                if (!sets[x].count(pl)) ++sym;
            if (sym > report.max_close_sym_diff) report.max_close_sym_diff = sym;
            const double ratio =
                common == 0 ? std::numeric_limits<double>::infinity()
                            : static_cast<double>(sym) / static_cast<double>(common);
            if (ratio > report.worst_ratio) {
                report.worst_ratio = ratio;
                report.worst_pair = {x, y};
            }
            if (!(ratio < epsilon_bound)) report.ratio_violations.push_back({x, y, ratio});
        }
    }
    if (n) report.sym_diff_within_2n = report.max_close_sym_diff <= 2 * *n;

    report.pass = report.support_violations.empty() && report.ratio_violations.empty() &&
                  report.projection_violations.empty();
    return report;
}

bool ball_inclusion_scan(const FiniteMetricSpace& space, const Cover& cover, double L) {
    auto missing = uncovered_points(space, cover);
    if (!missing.empty()) throw NotACoverError(std::move(missing));

    for (Point x = 0; x < space.size(); ++x) {
        const PointSet ball = closed_ball(space, x, L);
        bool contained = false;
        for (const auto& element : cover.elements()) {
            bool all = true;
            for (Point y : ball) {
                if (!element.contains(y)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

}  // namespace coarse
