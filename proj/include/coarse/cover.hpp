#ifndef COARSE_COVER_HPP_
#define COARSE_COVER_HPP_

#include <optional>
#include <vector>

#include <coarse/metric.hpp>

namespace coarse {

/// A family of non-empty point sets. Element order is significant (element
/// index j identifies U_j); members within an element are kept sorted, so
/// two covers are equal iff their element sequences match.
class Cover {
public:
    Cover() = default;
    explicit Cover(std::vector<PointSet> elements);

    std::span<const PointSet> elements() const noexcept { return elements_; }
    const PointSet& element(std::size_t j) const { return elements_.at(j); }
    std::size_t element_count() const noexcept { return elements_.size(); }

    friend bool operator==(const Cover&, const Cover&) = default;

private:
    std::vector<PointSet> elements_;
};

/// Per-point Lebesgue margins: per_point[x] is the largest distance from x
/// to the complement of an element containing x (+inf when that element is
/// the whole space). Every closed L-ball lies in some element iff
/// min_margin > L.
struct MarginTable {
    double min_margin = 0.0;
    Point argmin = -1;              // smallest point attaining the minimum
    std::vector<double> per_point;
};

/// Measurement summary plus pass flags for whichever bounds were supplied.
struct CoverReport {
    bool is_cover = false;
    int multiplicity = 0;
    double mesh = 0.0;       // 0 when the family is empty
    double min_margin = 0.0; // 0 and argmin -1 when not a cover
    Point margin_argmin = -1;
    PointSet uncovered;

    std::optional<bool> multiplicity_ok;  // multiplicity <= n+1
    std::optional<bool> mesh_ok;          // mesh <= S
    std::optional<bool> lebesgue_ok;      // min_margin > L
    bool pass = false;

    friend bool operator==(const CoverReport&, const CoverReport&) = default;
};

/// Max number of elements containing a single point (0 for an empty family).
int multiplicity(const FiniteMetricSpace& space, const Cover& cover);

/// Max element diameter. Throws on an empty family.
double mesh(const FiniteMetricSpace& space, const Cover& cover);

/// Throws NotACoverError when some point lies in no element.
MarginTable lebesgue_margin(const FiniteMetricSpace& space, const Cover& cover);

/// min_margin > L, strictly (closed-ball semantics).
bool is_lebesgue_at_least(const FiniteMetricSpace& space, const Cover& cover, double L);

/// Shifted-cube cover of a gen_grid(dim, side, linf) space: one tiling of
/// cubes with side (dim+1)*q per color c in {0..dim}, shifted by c*q in
/// every coordinate and clipped to the grid. Multiplicity is exactly dim+1
/// and mesh is at most (dim+1)*q - 1.
Cover brick_cover(const FiniteMetricSpace& space, int q);

/// Measures everything and applies whichever of the three bounds are given.
/// Never throws on verification failure; structural garbage (out-of-range
/// indices) still throws.
CoverReport verify_cover(const FiniteMetricSpace& space, const Cover& cover,
                         std::optional<int> n = std::nullopt,
                         std::optional<double> S = std::nullopt,
                         std::optional<double> L = std::nullopt);

/// Points of [0,N) missing from the union of elements.
std::vector<Point> uncovered_points(const FiniteMetricSpace& space, const Cover& cover);

}  // namespace coarse

#endif  // COARSE_COVER_HPP_
