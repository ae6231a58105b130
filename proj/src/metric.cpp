#include <coarse/metric.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <sstream>

namespace coarse {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::not_square: return "NotSquare";
        case Errc::asymmetric_matrix: return "AsymmetricMatrix";
        case Errc::nonzero_diagonal: return "NonzeroDiagonal";
        case Errc::negative_entry: return "NegativeEntry";
        case Errc::nonfinite_entry: return "NonfiniteEntry";
        case Errc::triangle_violation: return "TriangleViolation";
        case Errc::disconnected_graph: return "DisconnectedGraph";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::empty_subset: return "EmptySubset";
        case Errc::empty_cover: return "EmptyCover";
        case Errc::not_a_cover: return "NotACover";
        case Errc::not_a_grid_space: return "NotAGridSpace";
        case Errc::side_too_small: return "SideTooSmall";
        case Errc::lebesgue_too_small: return "LebesgueTooSmall";
        case Errc::cap_overflow: return "CapOverflow";
        case Errc::empty_witness_set: return "EmptyWitnessSet";
        case Errc::invalid_witness: return "InvalidWitness";
        case Errc::invalid_cover: return "InvalidCover";
        case Errc::premise_failed: return "PremiseFailed";
        case Errc::no_cover_exists: return "NoCoverExists";
        case Errc::parse_error: return "ParseError";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

namespace {

std::string uncovered_message(const std::vector<Point>& uncovered) {
    std::ostringstream os;
    os << uncovered.size() << " uncovered point(s), first:";
    for (std::size_t i = 0; i < uncovered.size() && i < 8; ++i) os << ' ' << uncovered[i];
    return os.str();
}

}  // namespace

NotACoverError::NotACoverError(std::vector<Point> uncovered)
    : Error(Errc::not_a_cover, uncovered_message(uncovered),
            {uncovered.empty() ? -1 : uncovered.front(), -1, -1}),
      uncovered_(std::move(uncovered)) {}

PointSet PointSet::of_sorted(std::vector<Point> members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] < 0)
            throw Error(Errc::invalid_argument, "negative point index", {members[i], -1, -1});
        if (i > 0 && members[i] <= members[i - 1])
            throw Error(Errc::invalid_argument, "point set not strictly sorted",
                        {members[i - 1], members[i], -1});
    }
    PointSet s;
    s.members_ = std::move(members);
    return s;
}

PointSet PointSet::of_unsorted(std::vector<Point> members) {
    std::sort(members.begin(), members.end());
    return of_sorted(std::move(members));
}

bool PointSet::contains(Point p) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), p);
}

namespace detail {
void check_points_in_range(const PointSet& a, int n) {
    if (!a.empty() && (a.members().front() < 0 || a.members().back() >= n))
        throw Error(Errc::invalid_argument, "point index out of range",
                    {a.members().back(), n, -1});
}
}  // namespace detail

FiniteMetricSpace validate_space(const std::vector<std::vector<double>>& dist) {
    const std::size_t n = dist.size();
    if (n == 0) throw Error(Errc::invalid_argument, "empty distance matrix");
    for (std::size_t i = 0; i < n; ++i)
        if (dist[i].size() != n)
            throw Error(Errc::not_square, "row length differs from row count",
                        {static_cast<std::int64_t>(i), -1, -1});

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist[i][j];
            if (!std::isfinite(d))
                throw Error(Errc::nonfinite_entry, "distance entry not finite",
                            {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), -1});
            if (d < 0.0)
                throw Error(Errc::negative_entry, "negative distance entry",
                            {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), -1});
        }
        if (dist[i][i] != 0.0)
            throw Error(Errc::nonzero_diagonal, "diagonal entry not zero",
                        {static_cast<std::int64_t>(i), -1, -1});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist[i][j] != dist[j][i])
                throw Error(Errc::asymmetric_matrix, "matrix not symmetric",
                            {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), -1});

    // Exhaustive triangle scan; first violating (i,j,k) in lexicographic order.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist[i][j] > dist[i][k] + dist[k][j])
                    throw Error(Errc::triangle_violation, "triangle inequality violated",
                                {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                                 static_cast<std::int64_t>(k)});

    FiniteMetricSpace s;
    s.n_ = static_cast<int>(n);
    s.dense_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        std::copy(dist[i].begin(), dist[i].end(), s.dense_.begin() + i * n);
    return s;
}

FiniteMetricSpace from_graph(int n, std::span<const WeightedEdge> edges) {
    if (n < 1) throw Error(Errc::invalid_argument, "graph needs at least one vertex");
    std::vector<std::vector<std::pair<Point, double>>> adj(n);
    for (const auto& e : edges) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw Error(Errc::invalid_argument, "edge endpoint out of range", {e.a, e.b, -1});
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw Error(Errc::invalid_argument, "edge weight must be positive and finite",
                        {e.a, e.b, -1});
        if (e.a == e.b) continue;  // self-loops never shorten a path
        adj[e.a].emplace_back(e.b, e.weight);
        adj[e.b].emplace_back(e.a, e.weight);
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    FiniteMetricSpace s;
    s.n_ = n;
    s.dense_.assign(static_cast<std::size_t>(n) * n, kInf);

    // Dijkstra from every source.
    using Item = std::pair<double, Point>;
    std::vector<double> dist(n);
    for (Point src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), kInf);
        dist[src] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (auto [v, w] : adj[u]) {
                if (dist[u] + w < dist[v]) {
                    dist[v] = dist[u] + w;
                    heap.emplace(dist[v], v);
                }
            }
        }
        for (Point v = 0; v < n; ++v) {
            if (!std::isfinite(dist[v]))
                throw Error(Errc::disconnected_graph, "no path between vertices",
                            {src, v, -1});
            s.dense_[static_cast<std::size_t>(src) * n + v] = dist[v];
        }
    }
    return s;
}

FiniteMetricSpace gen_grid(int dim, int side, GridNorm norm, int point_budget) {
    if (dim < 1) throw Error(Errc::invalid_argument, "grid dim must be >= 1", {dim, -1, -1});
    if (side < 1) throw Error(Errc::invalid_argument, "grid side must be >= 1", {side, -1, -1});
    if (point_budget < 1) throw Error(Errc::invalid_argument, "point budget must be >= 1");

    std::int64_t count = 1;
    for (int i = 0; i < dim; ++i) {
        count *= side;
        if (count > point_budget)
            throw Error(Errc::budget_exceeded, "grid exceeds point budget",
                        {count, point_budget, -1});
    }

    FiniteMetricSpace s;
    s.n_ = static_cast<int>(count);
    s.grid_ = GridMeta{dim, side, norm};
    s.coords_.resize(static_cast<std::size_t>(count) * dim);
    for (std::int64_t p = 0; p < count; ++p) {
        std::int64_t rest = p;
        for (int axis = dim - 1; axis >= 0; --axis) {
            s.coords_[p * dim + axis] = static_cast<std::int32_t>(rest % side);
            rest /= side;
        }
    }
    return s;
}

double FiniteMetricSpace::grid_distance(Point i, Point j) const noexcept {
    const int dim = grid_->dim;
    const std::int32_t* a = coords_.data() + static_cast<std::size_t>(i) * dim;
    const std::int32_t* b = coords_.data() + static_cast<std::size_t>(j) * dim;
    std::int64_t acc = 0;
    if (grid_->norm == GridNorm::linf) {
        for (int k = 0; k < dim; ++k) acc = std::max<std::int64_t>(acc, std::abs(a[k] - b[k]));
    } else {
        for (int k = 0; k < dim; ++k) acc += std::abs(a[k] - b[k]);
    }
    return static_cast<double>(acc);
}

double FiniteMetricSpace::diameter() const {
    double best = 0.0;
    for (Point i = 0; i < n_; ++i)
        for (Point j = i + 1; j < n_; ++j) best = std::max(best, distance(i, j));
    return best;
}

PointSet closed_ball(const FiniteMetricSpace& space, Point x, double r) {
    if (x < 0 || x >= space.size())
        throw Error(Errc::invalid_argument, "ball center out of range", {x, space.size(), -1});
    if (r < 0.0) throw Error(Errc::invalid_argument, "ball radius must be >= 0");
    std::vector<Point> members;
    for (Point y = 0; y < space.size(); ++y)
        if (space.distance(x, y) <= r) members.push_back(y);
    return PointSet::of_sorted(std::move(members));
}

double subset_diameter(const FiniteMetricSpace& space, const PointSet& a) {
    if (a.empty()) throw Error(Errc::empty_subset, "diameter of empty subset");
    detail::check_points_in_range(a, space.size());
    double best = 0.0;
    const auto pts = a.members();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, space.distance(pts[i], pts[j]));
    return best;
}

RStepGraph r_step_graph(const FiniteMetricSpace& space, double R) {
    if (!(R > 0.0)) throw Error(Errc::invalid_argument, "step bound R must be > 0");
    const int n = space.size();
    RStepGraph g;
    g.step = R;
    g.offsets.assign(n + 1, 0);
    for (Point i = 0; i < n; ++i) {
        std::int32_t deg = 0;
        for (Point j = 0; j < n; ++j)
            if (j != i && space.distance(i, j) <= R) ++deg;
        g.offsets[i + 1] = g.offsets[i] + deg;
    }
    g.neighbors.resize(g.offsets[n]);
    for (Point i = 0; i < n; ++i) {
        std::int32_t at = g.offsets[i];
        for (Point j = 0; j < n; ++j)
            if (j != i && space.distance(i, j) <= R) g.neighbors[at++] = j;
    }
    return g;
}

}  // namespace coarse
