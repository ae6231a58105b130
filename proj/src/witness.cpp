#include <coarse/witness.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coarse {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WitnessSet WitnessSet::from_pairs(std::vector<PointLevel> pairs) {
    if (pairs.empty()) throw Error(Errc::empty_witness_set, "witness set has no pairs");
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].point < 0)
            throw Error(Errc::invalid_witness, "negative point in witness pair",
                        {pairs[i].point, -1, -1});
        if (pairs[i].level < 1)
            throw Error(Errc::invalid_witness, "witness level must be >= 1",
                        {pairs[i].point, pairs[i].level, -1});
        if (i > 0 && pairs[i] == pairs[i - 1])
            throw Error(Errc::invalid_witness, "duplicate witness pair",
                        {pairs[i].point, pairs[i].level, -1});
    }
    WitnessSet s;
    s.pairs_ = std::move(pairs);
    return s;
}

std::int64_t WitnessSet::column_size(Point p) const noexcept {
    auto lo = std::lower_bound(pairs_.begin(), pairs_.end(),
                               PointLevel{p, std::numeric_limits<Level>::min()});
    auto hi = std::lower_bound(lo, pairs_.end(),
                               PointLevel{static_cast<Point>(p + 1),
                                          std::numeric_limits<Level>::min()});
    return hi - lo;
}

SetArithmetic pair_set_arithmetic(const WitnessSet& a, const WitnessSet& b) {
    const auto pa = a.pairs();
    const auto pb = b.pairs();
    std::size_t i = 0, j = 0;
    std::int64_t common = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i] < pb[j]) {
            ++i;
        } else if (pb[j] < pa[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    SetArithmetic out;
    out.intersection = common;
    out.symmetric_difference =
        static_cast<std::int64_t>(pa.size()) + static_cast<std::int64_t>(pb.size()) - 2 * common;
    return out;
}

double variation_ratio(const WitnessSet& a, const WitnessSet& b) {
    const auto arith = pair_set_arithmetic(a, b);
    if (arith.intersection == 0) return kInf;
    return static_cast<double>(arith.symmetric_difference) /
           static_cast<double>(arith.intersection);
}

int projection_size(const WitnessSet& a) {
    int distinct = 0;
    Point prev = -1;
    for (const auto& pl : a.pairs()) {
        if (pl.point != prev) {
            ++distinct;
            prev = pl.point;
        }
    }
    return distinct;
}

namespace detail {
void check_family(const FiniteMetricSpace& space, const WitnessFamily& family) {
    if (static_cast<int>(family.sets.size()) != space.size())
        throw Error(Errc::invalid_witness, "family size differs from space size",
                    {static_cast<std::int64_t>(family.sets.size()), space.size(), -1});
    if (!(family.radius_S >= 0.0))
        throw Error(Errc::invalid_witness, "radius_S must be >= 0");
    for (std::size_t x = 0; x < family.sets.size(); ++x)
        for (const auto& pl : family.sets[x].pairs())
            if (pl.point >= space.size())
                throw Error(Errc::invalid_witness, "witness pair point out of range",
                            {static_cast<std::int64_t>(x), pl.point, space.size()});
}
}  // namespace detail

WitnessReport verify_witness(const FiniteMetricSpace& space, const WitnessFamily& family,
                             double R, double epsilon_bound, std::optional<int> n) {
    if (!(R > 0.0)) throw Error(Errc::invalid_argument, "R must be > 0");
    if (!(epsilon_bound > 0.0)) throw Error(Errc::invalid_argument, "epsilon bound must be > 0");
    detail::check_family(space, family);

    const int size = space.size();
    WitnessReport report;

    for (Point x = 0; x < size; ++x)
        for (const auto& pl : family.sets[x].pairs())
            if (space.distance(x, pl.point) > family.radius_S)
                report.support_violations.push_back({x, pl.point, pl.level});

    for (Point x = 0; x < size; ++x) {
        const int proj = projection_size(family.sets[x]);
        report.max_projection = std::max(report.max_projection, proj);
        if (n && proj > *n + 1) report.projection_violations.push_back(x);
    }

    for (Point x = 0; x < size; ++x) {
        for (Point y = x + 1; y < size; ++y) {
            if (space.distance(x, y) > R) continue;
            ++report.close_pairs_checked;
            const auto arith = pair_set_arithmetic(family.sets[x], family.sets[y]);
            report.max_close_sym_diff =
                std::max(report.max_close_sym_diff, arith.symmetric_difference);
            const double ratio =
                arith.intersection == 0
                    ? kInf
                    : static_cast<double>(arith.symmetric_difference) /
                          static_cast<double>(arith.intersection);
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

Level ChainLengthTable::length_at(const Cover& cover, std::size_t j, Point x) const {
    const auto members = cover.element(j).members();
    auto it = std::lower_bound(members.begin(), members.end(), x);
    if (it == members.end() || *it != x)
        throw Error(Errc::invalid_argument, "point not in cover element",
                    {static_cast<std::int64_t>(j), x, -1});
    return lengths[j][static_cast<std::size_t>(it - members.begin())];
}

ChainLengthTable chain_length_table(const FiniteMetricSpace& space, const Cover& cover,
                                    double R, Level cap) {
    if (cap < 1) throw Error(Errc::invalid_argument, "cap must be >= 1");
    auto missing = uncovered_points(space, cover);
    if (!missing.empty()) throw NotACoverError(std::move(missing));

    const int n = space.size();
    const RStepGraph graph = r_step_graph(space, R);

    ChainLengthTable table;
    table.cap = cap;
    table.rep.reserve(cover.element_count());
    table.lengths.reserve(cover.element_count());

    std::vector<std::int32_t> hops(n);
    std::vector<Point> queue(n);
    std::vector<char> inside(n, 0);

    for (const auto& element : cover.elements()) {
        table.rep.push_back(element.members().front());

        for (Point p : element) inside[p] = 1;
        std::fill(hops.begin(), hops.end(), -1);
        std::size_t head = 0, tail = 0;
        for (Point p = 0; p < n; ++p) {
            if (!inside[p]) {
                hops[p] = 0;
                queue[tail++] = p;
            }
        }
        while (head < tail) {
            const Point u = queue[head++];
            for (Point v : graph.neighbors_of(u)) {
                if (hops[v] < 0) {
                    hops[v] = hops[u] + 1;
                    queue[tail++] = v;
                }
            }
        }

        std::vector<Level> lens;
        lens.reserve(element.size());
        for (Point p : element) {
            // Unreachable (or complement empty) means no chain exits: cap.
            const Level raw = hops[p] < 0 ? cap : static_cast<Level>(hops[p]);
            lens.push_back(std::min(cap, raw));
        }
        table.lengths.push_back(std::move(lens));
        for (Point p : element) inside[p] = 0;
    }
    return table;
}

double choose_scale(double R, double epsilon, int n) {
    if (!(R > 0.0)) throw Error(Errc::invalid_argument, "R must be > 0");
    if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "epsilon must be > 0");
    if (n < 0) throw Error(Errc::invalid_argument, "n must be >= 0");
    const double steps = std::ceil((2.0 * n + 1.0) / epsilon) + 1.0;
    return R * steps;
}

WitnessFamily assemble_witness(const FiniteMetricSpace& space, const Cover& cover,
                               const ChainLengthTable& table) {
    const int n = space.size();
    const Level cap = table.cap;
    const std::int64_t element_count = static_cast<std::int64_t>(cover.element_count());
    if (element_count == 0) throw Error(Errc::empty_cover, "cannot assemble from empty cover");
    if (cap > std::numeric_limits<Level>::max() / element_count)
        throw Error(Errc::cap_overflow, "level offsets exceed the integer range",
                    {element_count, -1, -1});

    std::vector<std::vector<PointLevel>> pairs(n);
    for (std::size_t j = 0; j < cover.element_count(); ++j) {
        const Level offset = static_cast<Level>(j) * cap;
        const Point rep = table.rep[j];
        const auto members = cover.element(j).members();
        for (std::size_t i = 0; i < members.size(); ++i) {
            const Level len = table.lengths[j][i];
            for (Level t = 1; t <= len; ++t) pairs[members[i]].push_back({rep, offset + t});
        }
    }

    WitnessFamily family;
    family.radius_S = mesh(space, cover);
    family.sets.reserve(n);
    for (Point x = 0; x < n; ++x) family.sets.push_back(WitnessSet::from_pairs(std::move(pairs[x])));
    return family;
}

WitnessFamily cover_to_witness(const FiniteMetricSpace& space, const Cover& cover,
                               double R, double L) {
    if (!(R > 0.0)) throw Error(Errc::invalid_argument, "R must be > 0");
    if (L < R) throw Error(Errc::invalid_argument, "need L >= R");

    const auto margins = lebesgue_margin(space, cover);
    if (!(margins.min_margin > L)) {
        std::ostringstream os;
        os << "cover margin " << margins.min_margin << " at point " << margins.argmin
           << " does not exceed L = " << L;
        throw Error(Errc::lebesgue_too_small, os.str(), {margins.argmin, -1, -1});
    }

    const double raw_cap = std::floor(L / R) + 1.0;
    if (!(raw_cap < 9.0e15))
        throw Error(Errc::cap_overflow, "floor(L/R) + 1 exceeds the integer range");
    const ChainLengthTable table =
        chain_length_table(space, cover, R, static_cast<Level>(raw_cap));
    return assemble_witness(space, cover, table);
}

std::int32_t DerivedCover::element_of(Point p) const noexcept {
    auto it = std::lower_bound(defining_point.begin(), defining_point.end(), p);
    if (it == defining_point.end() || *it != p) return -1;
    return static_cast<std::int32_t>(it - defining_point.begin());
}

DerivedCover witness_to_cover(const FiniteMetricSpace& space, const WitnessFamily& family) {
    detail::check_family(space, family);
    const int n = space.size();

    // U_p = {y : p in projection of A_y}; building per y in ascending order
    // keeps every candidate sorted.
    std::vector<std::vector<Point>> candidate(n);
    for (Point y = 0; y < n; ++y) {
        Point prev = -1;
        for (const auto& pl : family.sets[y].pairs()) {
            if (pl.point != prev) {
                candidate[pl.point].push_back(y);
                prev = pl.point;
            }
        }
    }

    DerivedCover out;
    std::vector<PointSet> elements;
    for (Point p = 0; p < n; ++p) {
        if (candidate[p].empty()) continue;
        out.defining_point.push_back(p);
        elements.push_back(PointSet::of_sorted(std::move(candidate[p])));
    }
    out.cover = Cover(std::move(elements));

    out.selected.resize(n);
    for (Point x = 0; x < n; ++x) {
        Point best_point = -1;
        std::int64_t best_count = 0;
        const auto pairs = family.sets[x].pairs();
        std::size_t i = 0;
        while (i < pairs.size()) {
            std::size_t j = i;
            while (j < pairs.size() && pairs[j].point == pairs[i].point) ++j;
            const auto count = static_cast<std::int64_t>(j - i);
            if (count > best_count) {  // ties keep the smaller point
                best_count = count;
                best_point = pairs[i].point;
            }
            i = j;
        }
        out.selected[x] = best_point;
    }
    return out;
}

InclusionScan scan_ball_inclusion(const FiniteMetricSpace& space, const WitnessFamily& family,
                                  const DerivedCover& derived, double R) {
    InclusionScan scan;
    for (Point x = 0; x < space.size(); ++x) {
        const Point z = derived.selected[x];
        for (Point y = 0; y < space.size(); ++y) {
            if (space.distance(x, y) > R) continue;
            ++scan.checked;
            if (!family.sets[y].has_point(z))
                scan.violations.push_back(
                    {x, y, variation_ratio(family.sets[x], family.sets[y])});
        }
    }
    return scan;
}

CertificateReport certify_c_implies_a(const FiniteMetricSpace& space,
                                      const WitnessFamily& family, double R, int n) {
    if (n < 0) throw Error(Errc::invalid_argument, "n must be >= 0");
    CertificateReport cert;
    cert.premise = verify_witness(space, family, R, 1.0 / (n + 1), n);
    if (!cert.premise.pass) {
        std::ostringstream os;
        os << "witness verifier failed at bound 1/" << (n + 1)
           << " (worst ratio " << cert.premise.worst_ratio << " at pair ("
           << cert.premise.worst_pair.first << "," << cert.premise.worst_pair.second << "))";
        throw Error(Errc::premise_failed, os.str(),
                    {cert.premise.worst_pair.first, cert.premise.worst_pair.second, -1});
    }

    const DerivedCover derived = witness_to_cover(space, family);
    cert.multiplicity = multiplicity(space, derived.cover);
    cert.multiplicity_ok = cert.multiplicity <= n + 1;
    cert.mesh = mesh(space, derived.cover);
    cert.mesh_bound = 2.0 * family.radius_S;
    cert.mesh_ok = cert.mesh <= cert.mesh_bound;

    auto scan = scan_ball_inclusion(space, family, derived, R);
    cert.inclusion_checked = scan.checked;
    cert.inclusion_violations = std::move(scan.violations);
    cert.inclusion_ok = cert.inclusion_violations.empty();

    cert.min_column_share = kInf;
    cert.column_bound_ok = true;
    for (Point x = 0; x < space.size(); ++x) {
        const std::int64_t column = family.sets[x].column_size(derived.selected[x]);
        const std::int64_t total = family.sets[x].size();
        if (column * (n + 1) < total) cert.column_bound_ok = false;
        cert.min_column_share =
            std::min(cert.min_column_share,
                     static_cast<double>(column) / static_cast<double>(total));
    }

    cert.pass = cert.multiplicity_ok && cert.mesh_ok && cert.inclusion_ok &&
                cert.column_bound_ok;
    return cert;
}

}  // namespace coarse
