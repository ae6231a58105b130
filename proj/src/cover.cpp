#include <coarse/cover.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace coarse {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Cover::Cover(std::vector<PointSet> elements) : elements_(std::move(elements)) {
    for (std::size_t j = 0; j < elements_.size(); ++j)
        if (elements_[j].empty())
            throw Error(Errc::invalid_cover, "cover element is empty",
                        {static_cast<std::int64_t>(j), -1, -1});
}

namespace {

void check_cover_against_space(const FiniteMetricSpace& space, const Cover& cover) {
    for (const auto& e : cover.elements()) detail::check_points_in_range(e, space.size());
}

}  // namespace

std::vector<Point> uncovered_points(const FiniteMetricSpace& space, const Cover& cover) {
    check_cover_against_space(space, cover);
    std::vector<char> seen(space.size(), 0);
    for (const auto& e : cover.elements())
        for (Point p : e) seen[p] = 1;
    std::vector<Point> missing;
    for (Point p = 0; p < space.size(); ++p)
        if (!seen[p]) missing.push_back(p);
    return missing;
}

int multiplicity(const FiniteMetricSpace& space, const Cover& cover) {
    check_cover_against_space(space, cover);
    std::vector<int> count(space.size(), 0);
    for (const auto& e : cover.elements())
        for (Point p : e) ++count[p];
    int best = 0;
    for (int c : count) best = std::max(best, c);
    return best;
}

double mesh(const FiniteMetricSpace& space, const Cover& cover) {
    if (cover.element_count() == 0) throw Error(Errc::empty_cover, "mesh of empty cover");
    double best = 0.0;
    for (const auto& e : cover.elements()) best = std::max(best, subset_diameter(space, e));
    return best;
}

MarginTable lebesgue_margin(const FiniteMetricSpace& space, const Cover& cover) {
    auto missing = uncovered_points(space, cover);
    if (!missing.empty()) throw NotACoverError(std::move(missing));

    const int n = space.size();
    MarginTable table;
    table.per_point.assign(n, -1.0);

    std::vector<Point> complement;
    for (const auto& e : cover.elements()) {
        complement.clear();
        {
            auto it = e.begin();
            for (Point p = 0; p < n; ++p) {
                if (it != e.end() && *it == p) {
                    ++it;
                } else {
                    complement.push_back(p);
                }
            }
        }
        if (complement.empty()) {
            // Element is the whole space; nothing outside it.
            for (Point x : e) table.per_point[x] = kInf;
            continue;
        }
        for (Point x : e) {
            double& best = table.per_point[x];
            double m = kInf;
            for (Point y : complement) {
                m = std::min(m, space.distance(x, y));
                if (m <= best) break;  // cannot improve the max for x
            }
            best = std::max(best, m);
        }
    }

    table.min_margin = kInf;
    for (Point x = 0; x < n; ++x) {
        if (table.per_point[x] < table.min_margin) {
            table.min_margin = table.per_point[x];
            table.argmin = x;
        }
    }
    return table;
}

bool is_lebesgue_at_least(const FiniteMetricSpace& space, const Cover& cover, double L) {
    return lebesgue_margin(space, cover).min_margin > L;
}

Cover brick_cover(const FiniteMetricSpace& space, int q) {
    if (q < 1) throw Error(Errc::invalid_argument, "brick pitch q must be >= 1", {q, -1, -1});
    const auto& meta = space.grid_meta();
    if (!meta || meta->norm != GridNorm::linf)
        throw Error(Errc::not_a_grid_space, "brick_cover needs a gen_grid linf space");
    const int dim = meta->dim;
    const int side = meta->side;
    const std::int64_t block = static_cast<std::int64_t>(dim + 1) * q;
    if (side < block)
        throw Error(Errc::side_too_small, "grid side smaller than one brick",
                    {side, block, -1});

    // Per color and axis, the block boundaries sit at multiples of `block`
    // shifted by -c*q; clipping to [0, side) keeps partial intervals. Since
    // 0 <= c*q < block, the m = 0 block always meets the grid.
    std::vector<PointSet> elements;
    for (int c = 0; c <= dim; ++c) {
        std::vector<std::pair<int, int>> intervals;  // [begin, end) along one axis
        for (std::int64_t m = 0;; ++m) {
            std::int64_t lo = m * block - static_cast<std::int64_t>(c) * q;
            if (lo >= side) break;
            std::int64_t hi = lo + block;
            intervals.emplace_back(static_cast<int>(std::max<std::int64_t>(lo, 0)),
                                   static_cast<int>(std::min<std::int64_t>(hi, side)));
        }

        // Cartesian product of per-axis intervals, in row-major interval order.
        std::vector<int> pick(dim, 0);
        for (;;) {
            std::vector<Point> members;
            std::vector<int> coord(dim);
            for (int a = 0; a < dim; ++a) coord[a] = intervals[pick[a]].first;
            for (;;) {
                std::int64_t idx = 0;
                for (int a = 0; a < dim; ++a) idx = idx * side + coord[a];
                members.push_back(static_cast<Point>(idx));
                int a = dim - 1;
                while (a >= 0 && ++coord[a] >= intervals[pick[a]].second) {
                    coord[a] = intervals[pick[a]].first;
                    --a;
                }
                if (a < 0) break;
            }
            elements.push_back(PointSet::of_unsorted(std::move(members)));
            int a = dim - 1;
            while (a >= 0 && ++pick[a] >= static_cast<int>(intervals.size())) {
                pick[a] = 0;
                --a;
            }
            if (a < 0) break;
        }
    }
    return Cover(std::move(elements));
}

CoverReport verify_cover(const FiniteMetricSpace& space, const Cover& cover,
                         std::optional<int> n, std::optional<double> S,
                         std::optional<double> L) {
    CoverReport report;
    report.uncovered = PointSet::of_sorted(uncovered_points(space, cover));
    report.is_cover = report.uncovered.empty();
    report.multiplicity = multiplicity(space, cover);
    report.mesh = 0.0;
    for (const auto& e : cover.elements())
        report.mesh = std::max(report.mesh, subset_diameter(space, e));

    if (report.is_cover) {
        auto margins = lebesgue_margin(space, cover);
        report.min_margin = margins.min_margin;
        report.margin_argmin = margins.argmin;
    }

    if (n) report.multiplicity_ok = report.multiplicity <= *n + 1;
    if (S) report.mesh_ok = report.mesh <= *S;
    if (L) report.lebesgue_ok = report.is_cover && report.min_margin > *L;

    report.pass = report.is_cover && report.multiplicity_ok.value_or(true) &&
                  report.mesh_ok.value_or(true) && report.lebesgue_ok.value_or(true);
    return report;
}

}  // namespace coarse
