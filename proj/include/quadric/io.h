#pragma once

// JSON formats. Vertex labels are 1-based in files; ideal points at infinity
// are written as the string "inf"; exact rationals as "p/q" strings.
//
//   graph     {"n": N, "edges": [[i, j], ...], "rotation": {"i": [j, ...], ...}}
//             rotation optional (counterclockwise neighbour lists); the
//             equator is the cycle 1, 2, ..., N
//   angles    {"angles": [{"edge": [i, j], "theta": t}, ...]}
//   polygons  {"x": [...], "y": [...]}           (left and right projections)
//   hp        {"polygon": [...], "velocity": [...]}
//
// Parse errors name the offending JSON path, e.g. "$.edges[3][1]".

#include "quadric/ads.h"
#include "quadric/conditions.h"
#include "quadric/graph.h"
#include "quadric/hp.h"

#include "json.hpp"

#include <string>
#include <vector>

namespace quadric {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json parse_json(const std::string& text, const std::string& what);

PlaneGraph graph_from_json(const Json& j);
Json graph_to_json(const PlaneGraph& g);

// Angles per edge of g, in the order of g.edges().
std::vector<double> angles_from_json(const Json& j, const PlaneGraph& g);
Json angles_to_json(const PlaneGraph& g, const std::vector<double>& theta);

std::vector<double> reals_from_json(const Json& j, const std::string& path);
Json reals_to_json(const std::vector<double>& xs);

AdSPolyhedron ads_from_json(const Json& j);
Json ads_to_json(const AdSPolyhedron& P);
HPPolyhedron hp_from_json(const Json& j);
Json hp_to_json(const HPPolyhedron& P);

Json certificate_to_json(const PlaneGraph& g, const FeasibilityCertificate& cert);
FeasibilityCertificate certificate_from_json(const Json& j);

Json report_to_json(const PlaneGraph& g, const ConditionReport& report);
// Edge-keyed map "i-j" -> value.
Json edge_map(const PlaneGraph& g, const std::vector<double>& values);
Json edge_map(const MarkedTriangulation& tri, const std::vector<double>& values);

} // namespace quadric
