#ifndef COARSE_JSON_IO_HPP_
#define COARSE_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include <coarse/cover.hpp>
#include <coarse/metric.hpp>
#include <coarse/oracle.hpp>
#include <coarse/witness.hpp>

namespace coarse::io {

using json = nlohmann::ordered_json;

/// Infinite quantities serialize as the string "inf", never as a float.
json extended_to_json(double value);
double extended_from_json(const json& j);

// Space files: {"size": N, "dist": [[...]]} or
// {"generator": {"kind": "grid", "dim": d, "side": k, "norm": "linf"|"l1"}}.
// Readers take either form; writing the matrix form streams row by row so
// large spaces never build a DOM.
json space_to_json(const FiniteMetricSpace& space, bool keep_generator = false);
FiniteMetricSpace space_from_json(const json& j, int point_budget = kDefaultPointBudget);
void write_space_file(const std::string& path, const FiniteMetricSpace& space,
                      bool keep_generator = false);

// Cover files: {"elements": [[sorted point indices], ...]}.
json cover_to_json(const Cover& cover);
Cover cover_from_json(const json& j);

// Witness files: {"radius_S": s, "sets": [[[point, level], ...], ...]}.
json witness_to_json(const WitnessFamily& family);
WitnessFamily witness_from_json(const json& j);

json cover_report_to_json(const CoverReport& report);
CoverReport cover_report_from_json(const json& j);

json witness_report_to_json(const WitnessReport& report);
WitnessReport witness_report_from_json(const json& j);

json certificate_to_json(const CertificateReport& cert);

json scale_params_to_json(const ScaleParams& params);

/// Edge-list files for `gen graph`: {"n": N, "edges": [[i, j, weight], ...]}.
std::pair<int, std::vector<WeightedEdge>> graph_from_json(const json& j);

json read_json_file(const std::string& path);

/// Writes via a temp file in the same directory, then renames into place.
void write_json_file(const std::string& path, const json& value);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace coarse::io

#endif  // COARSE_JSON_IO_HPP_
