#ifndef COARSE_TESTS_TEST_UTIL_HPP_
#define COARSE_TESTS_TEST_UTIL_HPP_

#include <random>
#include <set>
#include <utility>
#include <vector>

#include <coarse/cover.hpp>
#include <coarse/metric.hpp>
#include <coarse/witness.hpp>

namespace testutil {

/// Connected weighted graph metric with small integer weights, so every
/// distance is integral and threshold comparisons behave exactly.
inline coarse::FiniteMetricSpace random_graph_space(std::mt19937& rng, int min_points,
                                                    int max_points) {
    std::uniform_int_distribution<int> size_dist(min_points, max_points);
    const int n = size_dist(rng);
    std::vector<coarse::WeightedEdge> edges;
    std::uniform_int_distribution<int> weight(1, 4);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.push_back({parent(rng), v, static_cast<double>(weight(rng))});
    }
    const int extra = n > 2 ? static_cast<int>(rng() % n) : 0;
    std::uniform_int_distribution<int> vertex(0, n - 1);
    for (int i = 0; i < extra; ++i) {
        const int a = vertex(rng), b = vertex(rng);
        if (a != b) edges.push_back({a, b, static_cast<double>(weight(rng))});
    }
    return coarse::from_graph(n, edges);
}

/// Random family of subsets; with ensure_cover, leftover points are patched
/// in as singletons so the result genuinely covers.
inline coarse::Cover random_cover(std::mt19937& rng, int n_points, int max_elements,
                                  bool ensure_cover = true) {
    std::uniform_int_distribution<int> count(1, max_elements);
    const int k = count(rng);
    std::vector<coarse::PointSet> elements;
    std::vector<char> covered(n_points, 0);
    for (int j = 0; j < k; ++j) {
        std::set<coarse::Point> members;
        std::uniform_int_distribution<int> size(1, std::max(1, n_points / 2));
        std::uniform_int_distribution<int> pt(0, n_points - 1);
        const int s = size(rng);
        for (int i = 0; i < s; ++i) members.insert(pt(rng));
        std::vector<coarse::Point> v(members.begin(), members.end());
        for (coarse::Point p : v) covered[p] = 1;
        elements.push_back(coarse::PointSet::of_sorted(std::move(v)));
    }
    if (ensure_cover) {
        for (coarse::Point p = 0; p < n_points; ++p)
            if (!covered[p]) elements.push_back(coarse::PointSet::of_sorted({p}));
    }
    return coarse::Cover(std::move(elements));
}

/// Random witness set over the given point range.
inline coarse::WitnessSet random_witness_set(std::mt19937& rng, int n_points, int max_pairs,
                                             int max_level) {
    std::uniform_int_distribution<int> size(1, max_pairs);
    std::uniform_int_distribution<int> pt(0, n_points - 1);
    std::uniform_int_distribution<int> lvl(1, max_level);
    std::set<std::pair<coarse::Point, coarse::Level>> uniq;
    const int s = size(rng);
    for (int i = 0; i < s; ++i) uniq.insert({pt(rng), lvl(rng)});
    std::vector<coarse::PointLevel> pairs;
    for (const auto& [p, l] : uniq) pairs.push_back({p, l});
    return coarse::WitnessSet::from_pairs(std::move(pairs));
}

/// Random family; when `supported` the pairs at x stay inside the closed
/// radius_S ball of x, otherwise points are arbitrary and support violations
/// are likely.
inline coarse::WitnessFamily random_family(std::mt19937& rng,
                                           const coarse::FiniteMetricSpace& space,
                                           bool supported) {
    coarse::WitnessFamily family;
    std::uniform_int_distribution<int> radius(1, 8);
    family.radius_S = radius(rng);
    std::uniform_int_distribution<int> lvl(1, 3);
    std::uniform_int_distribution<int> size(1, 4);
    for (coarse::Point x = 0; x < space.size(); ++x) {
        std::set<std::pair<coarse::Point, coarse::Level>> uniq;
        const int s = size(rng);
        if (supported) {
            const auto ball = coarse::closed_ball(space, x, family.radius_S);
            std::uniform_int_distribution<int> pick(0, static_cast<int>(ball.size()) - 1);
            for (int i = 0; i < s; ++i)
                uniq.insert({ball.members()[pick(rng)], lvl(rng)});
        } else {
            std::uniform_int_distribution<int> pt(0, space.size() - 1);
            for (int i = 0; i < s; ++i) uniq.insert({pt(rng), lvl(rng)});
        }
        std::vector<coarse::PointLevel> pairs;
        for (const auto& [p, l] : uniq) pairs.push_back({p, l});
        family.sets.push_back(coarse::WitnessSet::from_pairs(std::move(pairs)));
    }
    return family;
}

}  // namespace testutil

#endif  // COARSE_TESTS_TEST_UTIL_HPP_
