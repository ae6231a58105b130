#ifndef COARSE_WITNESS_HPP_
#define COARSE_WITNESS_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <coarse/cover.hpp>
#include <coarse/metric.hpp>

namespace coarse {

using Level = std::int64_t;

struct PointLevel {
    Point point = 0;
    Level level = 1;
    friend auto operator<=>(const PointLevel&, const PointLevel&) = default;
};

/// A finite, non-empty set of (point, level) pairs with levels >= 1.
/// Stored sorted and duplicate-free; set arithmetic is on exact pairs, so
/// {(a,1)} and {(a,2)} are disjoint.
class WitnessSet {
public:
    static WitnessSet from_pairs(std::vector<PointLevel> pairs);

    std::span<const PointLevel> pairs() const noexcept { return pairs_; }
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(pairs_.size()); }

    /// Number of levels attached to `p` (the column {p} x N).
    std::int64_t column_size(Point p) const noexcept;
    bool has_point(Point p) const noexcept { return column_size(p) > 0; }

    friend bool operator==(const WitnessSet&, const WitnessSet&) = default;

private:
    std::vector<PointLevel> pairs_;
};

/// One witness set per point of the space, plus the declared support radius:
/// every (y, l) in the set at x is supposed to satisfy d(x,y) <= radius_S
/// (verified, not assumed).
struct WitnessFamily {
    double radius_S = 0.0;
    std::vector<WitnessSet> sets;

    friend bool operator==(const WitnessFamily&, const WitnessFamily&) = default;
};

struct SetArithmetic {
    std::int64_t intersection = 0;
    std::int64_t symmetric_difference = 0;
};

/// |A ∩ B| and |A Δ B| in one sorted merge.
SetArithmetic pair_set_arithmetic(const WitnessSet& a, const WitnessSet& b);

/// |A Δ B| / |A ∩ B|; +infinity when the intersection is empty.
double variation_ratio(const WitnessSet& a, const WitnessSet& b);

/// Number of distinct points appearing in the set.
int projection_size(const WitnessSet& a);

struct SupportViolation {
    Point x = 0;
    Point y = 0;
    Level level = 0;
    friend bool operator==(const SupportViolation&, const SupportViolation&) = default;
};

struct RatioViolation {
    Point x = 0;
    Point y = 0;
    double ratio = 0.0;
    friend bool operator==(const RatioViolation&, const RatioViolation&) = default;
};

/// Everything a witness verification run measures. pass holds exactly when
/// all three violation lists are empty. The last two fields record how the
/// close-pair symmetric differences compare against the tighter 2n count
/// (informational; the bound enforced by constructions is 2n+1).
struct WitnessReport {
    bool pass = false;
    double worst_ratio = 0.0;                  // +inf possible; 0 when no close pairs
    std::pair<Point, Point> worst_pair{-1, -1};
    int max_projection = 0;
    std::vector<SupportViolation> support_violations;  // sorted by (x, y, level)
    std::vector<RatioViolation> ratio_violations;      // x < y, sorted by (x, y)
    std::vector<Point> projection_violations;          // only when a bound n was given
    std::int64_t close_pairs_checked = 0;              // unordered pairs x < y with d <= R
    std::int64_t max_close_sym_diff = 0;               // largest |A_x Δ A_y| among them
    std::optional<bool> sym_diff_within_2n;            // set when n was given

    friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

/// Scans every unordered pair with d(x,y) <= R for the strict ratio bound,
/// every pair of every set for the support condition, and (when n is given)
/// every projection against n+1.
WitnessReport verify_witness(const FiniteMetricSpace& space, const WitnessFamily& family,
                             double R, double epsilon_bound,
                             std::optional<int> n = std::nullopt);

/// Per element U_j and member x: the least number of steps of a chain
/// x = x_0, x_1, ..., x_k (consecutive distances <= R) ending outside U_j,
/// clamped to cap; cap when no such chain exists. rep[j] is the smallest
/// member of U_j.
struct ChainLengthTable {
    Level cap = 1;
    std::vector<Point> rep;                      // per element
    std::vector<std::vector<Level>> lengths;     // parallel to each element's members

    Level length_at(const Cover& cover, std::size_t j, Point x) const;
};

/// Multi-source BFS on r_step_graph(space, R), seeded at each element's
/// complement. Throws NotACoverError when the elements miss a point.
ChainLengthTable chain_length_table(const FiniteMetricSpace& space, const Cover& cover,
                                    double R, Level cap);

/// Lebesgue scale sufficient for the close-pair ratio to land strictly
/// under epsilon when the cover has multiplicity <= n+1:
/// L = R * (ceil((2n+1)/epsilon) + 1).
double choose_scale(double R, double epsilon, int n);

/// Assembles the witness family of a chain-length table: the set at x is
/// the union over elements U_j containing x of {(rep[j], j*cap + t) : 1 <=
/// t <= lengths(j,x)}. The j*cap offset keeps columns of distinct elements
/// disjoint even when representatives coincide. radius_S = mesh(cover).
WitnessFamily assemble_witness(const FiniteMetricSpace& space, const Cover& cover,
                               const ChainLengthTable& table);

/// Full forward direction: requires min_margin > L (else LebesgueTooSmall)
/// and L >= R, sets cap = floor(L/R) + 1, builds the chain table, and
/// assembles. Close pairs of the result then satisfy
/// |A_x Δ A_y| <= 2n+1 and |A_x ∩ A_y| >= floor(L/R) for n+1 = multiplicity.
WitnessFamily cover_to_witness(const FiniteMetricSpace& space, const Cover& cover,
                               double R, double L);

/// Cover derived from witness supports: one candidate element per point p,
/// U_p = {y : p appears in the projection of A_y}, empty candidates
/// dropped. selected[x] is the point whose column in A_x is largest
/// (ties to the smallest point).
struct DerivedCover {
    Cover cover;
    std::vector<Point> defining_point;  // per element, strictly increasing
    std::vector<Point> selected;        // per point x of the space

    /// Element index whose defining point is p, or -1 if p's candidate was empty.
    std::int32_t element_of(Point p) const noexcept;
};

DerivedCover witness_to_cover(const FiniteMetricSpace& space, const WitnessFamily& family);

struct InclusionViolation {
    Point x = 0;
    Point y = 0;   // d(x,y) <= R but y not in U_{selected[x]}
    double ratio = 0.0;  // variation_ratio(A_x, A_y) recorded for the pair
    friend bool operator==(const InclusionViolation&, const InclusionViolation&) = default;
};

struct InclusionScan {
    std::int64_t checked = 0;
    std::vector<InclusionViolation> violations;  // sorted by (x, y)
};

/// Direct check that closed_ball(x, R) ⊆ U_{selected[x]} for every x,
/// recording the variation ratio of each violating pair.
InclusionScan scan_ball_inclusion(const FiniteMetricSpace& space, const WitnessFamily& family,
                                  const DerivedCover& derived, double R);

/// Certificate for the witness-to-cover direction at bound 1/(n+1).
struct CertificateReport {
    WitnessReport premise;   // verify_witness(R, 1/(n+1), n)
    int multiplicity = 0;
    bool multiplicity_ok = false;   // <= n+1
    double mesh = 0.0;
    double mesh_bound = 0.0;        // 2 * radius_S
    bool mesh_ok = false;
    std::int64_t inclusion_checked = 0;
    std::vector<InclusionViolation> inclusion_violations;
    bool inclusion_ok = false;
    double min_column_share = 0.0;  // min over x of |selected column| / |A_x|
    bool column_bound_ok = false;   // |selected column| * (n+1) >= |A_x| for all x
    bool pass = false;
};

/// Runs the 1/(n+1) verifier; on success derives the cover and measures
/// multiplicity, mesh, ball inclusion, and the max-column pigeonhole bound
/// directly. Throws Errc::premise_failed when the verifier does not pass.
CertificateReport certify_c_implies_a(const FiniteMetricSpace& space,
                                      const WitnessFamily& family, double R, int n);

namespace detail {
/// Structural check of a family against a space: one set per point, all
/// pair points in range.
void check_family(const FiniteMetricSpace& space, const WitnessFamily& family);
}  // namespace detail

}  // namespace coarse

#endif  // COARSE_WITNESS_HPP_
