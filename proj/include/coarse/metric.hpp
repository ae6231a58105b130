#ifndef COARSE_METRIC_HPP_
#define COARSE_METRIC_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <coarse/errors.hpp>

namespace coarse {

using Point = std::int32_t;

/// Sorted, duplicate-free set of point indices. Range checks against a
/// particular space happen at the operations that pair the two.
class PointSet {
public:
    PointSet() = default;

    /// Takes an already sorted, duplicate-free, nonnegative sequence.
    static PointSet of_sorted(std::vector<Point> members);

    /// Sorts and rejects duplicates and negative indices.
    static PointSet of_unsorted(std::vector<Point> members);

    std::span<const Point> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Point p) const noexcept;

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<Point> members_;
};

enum class GridNorm { linf, l1 };

struct GridMeta {
    int dim = 0;
    int side = 0;
    GridNorm norm = GridNorm::linf;
};

struct WeightedEdge {
    Point a = 0;
    Point b = 0;
    double weight = 0.0;
};

/// Default cap on generated space sizes; keeps the O(N^2) pair scans sane.
inline constexpr int kDefaultPointBudget = 20000;

/// Finite metric space on points {0..N-1}. Backed either by an explicit
/// distance matrix or, for generated grids, by coordinates with the norm
/// evaluated on demand (identical contract, no N^2 storage).
class FiniteMetricSpace {
public:
    int size() const noexcept { return n_; }

    double distance(Point i, Point j) const noexcept {
        return dense_.empty() ? grid_distance(i, j)
                              : dense_[static_cast<std::size_t>(i) * n_ + j];
    }

    /// Grid provenance, if this space came from gen_grid.
    const std::optional<GridMeta>& grid_meta() const noexcept { return grid_; }

    /// Largest pairwise distance (0 for a single point).
    double diameter() const;

    friend FiniteMetricSpace validate_space(const std::vector<std::vector<double>>& dist);
    friend FiniteMetricSpace from_graph(int n, std::span<const WeightedEdge> edges);
    friend FiniteMetricSpace gen_grid(int dim, int side, GridNorm norm, int point_budget);

private:
    FiniteMetricSpace() = default;
    double grid_distance(Point i, Point j) const noexcept;

    int n_ = 0;
    std::vector<double> dense_;       // row-major n_*n_; empty when grid-backed
    std::optional<GridMeta> grid_;
    std::vector<std::int32_t> coords_;  // n_*dim, row-major per point
};

/// Checks all metric axioms exhaustively (symmetry, zero diagonal,
/// nonnegative finite entries, O(N^3) triangle scan) and wraps the matrix.
FiniteMetricSpace validate_space(const std::vector<std::vector<double>>& dist);

/// Shortest-path metric of an undirected positively weighted graph.
/// Throws Errc::disconnected_graph when some pair is unreachable.
FiniteMetricSpace from_graph(int n, std::span<const WeightedEdge> edges);

/// Lattice {0..side-1}^dim under the chosen norm, points enumerated in
/// row-major coordinate order (last coordinate fastest).
FiniteMetricSpace gen_grid(int dim, int side, GridNorm norm,
                           int point_budget = kDefaultPointBudget);

/// {y : d(x,y) <= r}. Requires r >= 0; always contains x.
PointSet closed_ball(const FiniteMetricSpace& space, Point x, double r);

/// Max pairwise distance within A; 0 for singletons. Throws on empty A.
double subset_diameter(const FiniteMetricSpace& space, const PointSet& a);

/// Undirected adjacency i ~ j iff i != j and d(i,j) <= R (closed steps).
struct RStepGraph {
    double step = 0.0;
    std::vector<std::int32_t> offsets;    // size N+1
    std::vector<Point> neighbors;         // ascending within each row

    std::span<const Point> neighbors_of(Point i) const noexcept {
        return {neighbors.data() + offsets[i],
                neighbors.data() + offsets[i + 1]};
    }
    std::int64_t edge_count() const noexcept {
        return static_cast<std::int64_t>(neighbors.size()) / 2;
    }
};

RStepGraph r_step_graph(const FiniteMetricSpace& space, double R);

/// The scale tuple threading through the theorem pipelines. L and S are
/// derived quantities; 0 stands for "not yet known".
struct ScaleParams {
    double R = 0.0;
    double epsilon = 0.0;
    int n = 0;
    double L = 0.0;
    double S = 0.0;
};

namespace detail {
/// Validates that every index of `a` lies in [0, n).
void check_points_in_range(const PointSet& a, int n);
}  // namespace detail

}  // namespace coarse

#endif  // COARSE_METRIC_HPP_
