#include <coarse/json_io.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

namespace coarse::io {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void bad(const std::string& what) {
    throw Error(Errc::parse_error, what);
}

double number_from(const json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

std::int64_t integer_from(const json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        bad(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

/// Shortest round-trip decimal form.
std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string temp_sibling(const std::string& path) {
    std::ostringstream os;
    os << path << ".tmp." << ::getpid();
    return os.str();
}

void commit(const std::string& tmp, const std::string& path) {
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(Errc::io_error, "cannot move output into place: " + path);
    }
}

}  // namespace

json extended_to_json(double value) {
    if (std::isinf(value)) return json("inf");
    return json(value);
}

double extended_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        bad("expected a number or \"inf\"");
    }
    return number_from(j, "extended value");
}

json space_to_json(const FiniteMetricSpace& space, bool keep_generator) {
    if (keep_generator && space.grid_meta()) {
        const auto& meta = *space.grid_meta();
        return json{{"generator",
                     {{"kind", "grid"},
                      {"dim", meta.dim},
                      {"side", meta.side},
                      {"norm", meta.norm == GridNorm::linf ? "linf" : "l1"}}}};
    }
    json rows = json::array();
    for (Point i = 0; i < space.size(); ++i) {
        json row = json::array();
        for (Point j = 0; j < space.size(); ++j) row.push_back(space.distance(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"size", space.size()}, {"dist", std::move(rows)}};
}

FiniteMetricSpace space_from_json(const json& j, int point_budget) {
    if (!j.is_object()) bad("space file must be a JSON object");
    if (j.contains("generator")) {
        const json& g = field(j, "generator");
        if (field(g, "kind").get<std::string>() != "grid") bad("unknown generator kind");
        const auto dim = static_cast<int>(integer_from(field(g, "dim"), "dim"));
        const auto side = static_cast<int>(integer_from(field(g, "side"), "side"));
        const std::string norm = field(g, "norm").get<std::string>();
        if (norm != "linf" && norm != "l1") bad("norm must be \"linf\" or \"l1\"");
        return gen_grid(dim, side, norm == "linf" ? GridNorm::linf : GridNorm::l1,
                        point_budget);
    }
    const auto size = integer_from(field(j, "size"), "size");
    const json& rows = field(j, "dist");
    if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != size)
        bad("dist must be a size x size array");
    std::vector<std::vector<double>> dist;
    dist.reserve(rows.size());
    for (const json& row : rows) {
        if (!row.is_array() || static_cast<std::int64_t>(row.size()) != size)
            bad("dist must be a size x size array");
        std::vector<double> r;
        r.reserve(row.size());
        for (const json& v : row) r.push_back(number_from(v, "distance entry"));
        dist.push_back(std::move(r));
    }
    return validate_space(dist);
}

void write_space_file(const std::string& path, const FiniteMetricSpace& space,
                      bool keep_generator) {
    if (keep_generator && space.grid_meta()) {
        write_json_file(path, space_to_json(space, true));
        return;
    }
    const std::string tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(Errc::io_error, "cannot open for writing: " + path);
        out << "{\n  \"size\": " << space.size() << ",\n  \"dist\": [\n";
        for (Point i = 0; i < space.size(); ++i) {
            out << "    [";
            for (Point j = 0; j < space.size(); ++j) {
                if (j) out << ", ";
                out << format_double(space.distance(i, j));
            }
            out << (i + 1 < space.size() ? "],\n" : "]\n");
        }
        out << "  ]\n}\n";
        if (!out) throw Error(Errc::io_error, "write failed: " + path);
    }
    commit(tmp, path);
}

json cover_to_json(const Cover& cover) {
    json elements = json::array();
    for (const auto& e : cover.elements()) {
        json members = json::array();
        for (Point p : e) members.push_back(p);
        elements.push_back(std::move(members));
    }
    return json{{"elements", std::move(elements)}};
}

Cover cover_from_json(const json& j) {
    if (!j.is_object()) bad("cover file must be a JSON object");
    const json& elements = field(j, "elements");
    if (!elements.is_array()) bad("elements must be an array");
    std::vector<PointSet> sets;
    sets.reserve(elements.size());
    for (const json& e : elements) {
        if (!e.is_array()) bad("cover element must be an array of point indices");
        std::vector<Point> members;
        members.reserve(e.size());
        for (const json& v : e)
            members.push_back(static_cast<Point>(integer_from(v, "point index")));
        sets.push_back(PointSet::of_unsorted(std::move(members)));
    }
    return Cover(std::move(sets));
}

json witness_to_json(const WitnessFamily& family) {
    json sets = json::array();
    for (const auto& s : family.sets) {
        json pairs = json::array();
        for (const auto& pl : s.pairs()) pairs.push_back(json::array({pl.point, pl.level}));
        sets.push_back(std::move(pairs));
    }
    return json{{"radius_S", family.radius_S}, {"sets", std::move(sets)}};
}

WitnessFamily witness_from_json(const json& j) {
    if (!j.is_object()) bad("witness file must be a JSON object");
    WitnessFamily family;
    family.radius_S = number_from(field(j, "radius_S"), "radius_S");
    const json& sets = field(j, "sets");
    if (!sets.is_array()) bad("sets must be an array");
    family.sets.reserve(sets.size());
    for (const json& s : sets) {
        if (!s.is_array()) bad("witness set must be an array of [point, level] pairs");
        std::vector<PointLevel> pairs;
        pairs.reserve(s.size());
        for (const json& pl : s) {
            if (!pl.is_array() || pl.size() != 2) bad("witness pair must be [point, level]");
            pairs.push_back({static_cast<Point>(integer_from(pl[0], "point")),
                             integer_from(pl[1], "level")});
        }
        family.sets.push_back(WitnessSet::from_pairs(std::move(pairs)));
    }
    return family;
}

json cover_report_to_json(const CoverReport& report) {
    json uncovered = json::array();
    for (Point p : report.uncovered) uncovered.push_back(p);
    json j{{"is_cover", report.is_cover},
           {"multiplicity", report.multiplicity},
           {"mesh", report.mesh},
           {"min_margin", extended_to_json(report.min_margin)},
           {"margin_argmin", report.margin_argmin},
           {"uncovered", std::move(uncovered)}};
    if (report.multiplicity_ok) j["multiplicity_ok"] = *report.multiplicity_ok;
    if (report.mesh_ok) j["mesh_ok"] = *report.mesh_ok;
    if (report.lebesgue_ok) j["lebesgue_ok"] = *report.lebesgue_ok;
    j["pass"] = report.pass;
    return j;
}

CoverReport cover_report_from_json(const json& j) {
    CoverReport report;
    report.is_cover = field(j, "is_cover").get<bool>();
    report.multiplicity = static_cast<int>(integer_from(field(j, "multiplicity"), "multiplicity"));
    report.mesh = number_from(field(j, "mesh"), "mesh");
    report.min_margin = extended_from_json(field(j, "min_margin"));
    report.margin_argmin =
        static_cast<Point>(integer_from(field(j, "margin_argmin"), "margin_argmin"));
    std::vector<Point> uncovered;
    for (const json& v : field(j, "uncovered"))
        uncovered.push_back(static_cast<Point>(integer_from(v, "uncovered point")));
    report.uncovered = PointSet::of_sorted(std::move(uncovered));
    if (j.contains("multiplicity_ok")) report.multiplicity_ok = j["multiplicity_ok"].get<bool>();
    if (j.contains("mesh_ok")) report.mesh_ok = j["mesh_ok"].get<bool>();
    if (j.contains("lebesgue_ok")) report.lebesgue_ok = j["lebesgue_ok"].get<bool>();
    report.pass = field(j, "pass").get<bool>();
    return report;
}

json witness_report_to_json(const WitnessReport& report) {
    json support = json::array();
    for (const auto& v : report.support_violations)
        support.push_back(json::array({v.x, v.y, v.level}));
    json ratios = json::array();
    for (const auto& v : report.ratio_violations)
        ratios.push_back(json::array({v.x, v.y, extended_to_json(v.ratio)}));
    json projections = json::array();
    for (Point x : report.projection_violations) projections.push_back(x);
    json j{{"pass", report.pass},
           {"worst_ratio", extended_to_json(report.worst_ratio)},
           {"worst_pair", json::array({report.worst_pair.first, report.worst_pair.second})},
           {"max_projection", report.max_projection},
           {"support_violations", std::move(support)},
           {"ratio_violations", std::move(ratios)},
           {"projection_violations", std::move(projections)},
           {"close_pairs_checked", report.close_pairs_checked},
           {"max_close_sym_diff", report.max_close_sym_diff}};
    if (report.sym_diff_within_2n) j["sym_diff_within_2n"] = *report.sym_diff_within_2n;
    return j;
}

WitnessReport witness_report_from_json(const json& j) {
    WitnessReport report;
    report.pass = field(j, "pass").get<bool>();
    report.worst_ratio = extended_from_json(field(j, "worst_ratio"));
    const json& pair = field(j, "worst_pair");
    report.worst_pair = {static_cast<Point>(integer_from(pair.at(0), "worst pair")),
                         static_cast<Point>(integer_from(pair.at(1), "worst pair"))};
    report.max_projection =
        static_cast<int>(integer_from(field(j, "max_projection"), "max_projection"));
    for (const json& v : field(j, "support_violations"))
        report.support_violations.push_back({static_cast<Point>(integer_from(v.at(0), "x")),
                                             static_cast<Point>(integer_from(v.at(1), "y")),
                                             integer_from(v.at(2), "level")});
    for (const json& v : field(j, "ratio_violations"))
        report.ratio_violations.push_back({static_cast<Point>(integer_from(v.at(0), "x")),
                                           static_cast<Point>(integer_from(v.at(1), "y")),
                                           extended_from_json(v.at(2))});
    for (const json& v : field(j, "projection_violations"))
        report.projection_violations.push_back(static_cast<Point>(integer_from(v, "point")));
    report.close_pairs_checked = integer_from(field(j, "close_pairs_checked"), "pairs");
    report.max_close_sym_diff = integer_from(field(j, "max_close_sym_diff"), "sym diff");
    if (j.contains("sym_diff_within_2n"))
        report.sym_diff_within_2n = j["sym_diff_within_2n"].get<bool>();
    return report;
}

json certificate_to_json(const CertificateReport& cert) {
    json violations = json::array();
    for (const auto& v : cert.inclusion_violations)
        violations.push_back(json::array({v.x, v.y, extended_to_json(v.ratio)}));
    return json{{"premise", witness_report_to_json(cert.premise)},
                {"multiplicity", cert.multiplicity},
                {"multiplicity_ok", cert.multiplicity_ok},
                {"mesh", cert.mesh},
                {"mesh_bound", cert.mesh_bound},
                {"mesh_ok", cert.mesh_ok},
                {"inclusion_checked", cert.inclusion_checked},
                {"inclusion_violations", std::move(violations)},
                {"inclusion_ok", cert.inclusion_ok},
                {"min_column_share", cert.min_column_share},
                {"column_bound_ok", cert.column_bound_ok},
                {"pass", cert.pass}};
}

json scale_params_to_json(const ScaleParams& params) {
    return json{{"R", params.R},
                {"epsilon", params.epsilon},
                {"n", params.n},
                {"L", params.L},
                {"S", params.S}};
}

std::pair<int, std::vector<WeightedEdge>> graph_from_json(const json& j) {
    if (!j.is_object()) bad("graph file must be a JSON object");
    const auto n = static_cast<int>(integer_from(field(j, "n"), "n"));
    std::vector<WeightedEdge> edges;
    for (const json& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 3) bad("edge must be [i, j, weight]");
        edges.push_back({static_cast<Point>(integer_from(e[0], "endpoint")),
                         static_cast<Point>(integer_from(e[1], "endpoint")),
                         number_from(e[2], "weight")});
    }
    return {n, std::move(edges)};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& value) {
    const std::string tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(Errc::io_error, "cannot open for writing: " + path);
        out << value.dump(2) << "\n";
        if (!out) throw Error(Errc::io_error, "write failed: " + path);
    }
    commit(tmp, path);
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::string tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(Errc::io_error, "cannot open for writing: " + path);
        out << text;
        if (!out) throw Error(Errc::io_error, "write failed: " + path);
    }
    commit(tmp, path);
}

}  // namespace coarse::io
