#include "quadric/io.h"

#include "quadric/error.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace quadric {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::InvalidInput, "at " + path + ": " + msg);
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing key \"" + key + "\"");
  return *it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

int label(const Json& j, int n, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer vertex label");
  int v = j.get<int>();
  if (v < 1 || v > n) fail(path, "vertex label out of range 1.." + std::to_string(n));
  return v - 1;
}

double number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "-inf") return std::numeric_limits<double>::infinity();
    try {
      return rational_from_string(s).get_d();
    } catch (const std::exception&) {
      fail(path, "expected a number, \"inf\" or \"p/q\"");
    }
  }
  fail(path, "expected a number");
}

std::string edge_key(int a, int b) { return std::to_string(a + 1) + "-" + std::to_string(b + 1); }

Json edge_pair(int a, int b) { return Json::array({a + 1, b + 1}); }

} // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, what + ": " + e.what());
  }
}

PlaneGraph graph_from_json(const Json& j) {
  const Json& jn = member(j, "n", "$");
  if (!jn.is_number_integer() || jn.get<int>() < 4) fail("$.n", "expected an integer of at least 4");
  int n = jn.get<int>();
  std::vector<std::array<int, 2>> edges;
  const Json& je = array_at(member(j, "edges", "$"), "$.edges");
  for (size_t k = 0; k < je.size(); ++k) {
    std::string p = "$.edges[" + std::to_string(k) + "]";
    if (!je[k].is_array() || je[k].size() != 2) fail(p, "expected a pair of labels");
    int a = label(je[k][0], n, p + "[0]"), b = label(je[k][1], n, p + "[1]");
    if (a == b) fail(p, "loop");
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  if (!j.contains("rotation")) {
    try {
      return PlaneGraph::from_edges(n, edges);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("at $.edges: ") + e.what());
    }
  }

  const Json& jr = member(j, "rotation", "$");
  if (!jr.is_object()) fail("$.rotation", "expected an object keyed by vertex label");
  std::vector<std::vector<int>> rot(n);
  std::vector<char> seen(n, 0);
  for (auto it = jr.begin(); it != jr.end(); ++it) {
    std::string p = "$.rotation." + it.key();
    int v = 0;
    try {
      v = std::stoi(it.key());
    } catch (const std::exception&) {
      fail(p, "key is not a vertex label");
    }
    if (v < 1 || v > n) fail(p, "vertex label out of range");
    if (seen[v - 1]) fail(p, "duplicate vertex");
    seen[v - 1] = 1;
    const Json& nb = array_at(it.value(), p);
    for (size_t k = 0; k < nb.size(); ++k) rot[v - 1].push_back(label(nb[k], n, p + "[" + std::to_string(k) + "]"));
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) fail("$.rotation", "missing vertex " + std::to_string(v + 1));
  PlaneGraph g;
  try {
    g = PlaneGraph::from_rotation(n, rot);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("at $.rotation: ") + e.what());
  }
  std::sort(edges.begin(), edges.end());
  if (edges != g.edges()) fail("$.rotation", "neighbour lists disagree with the edge list");
  return g;
}

Json graph_to_json(const PlaneGraph& g) {
  Json j;
  j["n"] = g.vertex_count();
  j["edges"] = Json::array();
  for (auto [a, b] : g.edges()) j["edges"].push_back(edge_pair(a, b));
  Json rot = Json::object();
  for (int v = 0; v < g.vertex_count(); ++v) {
    Json nb = Json::array();
    for (int w : g.rotation()[v]) nb.push_back(w + 1);
    rot[std::to_string(v + 1)] = nb;
  }
  j["rotation"] = rot;
  return j;
}

std::vector<double> angles_from_json(const Json& j, const PlaneGraph& g) {
  const Json& ja = array_at(member(j, "angles", "$"), "$.angles");
  std::vector<double> theta(g.edge_count(), 0.0);
  std::vector<char> seen(g.edge_count(), 0);
  for (size_t k = 0; k < ja.size(); ++k) {
    std::string p = "$.angles[" + std::to_string(k) + "]";
    const Json& je = member(ja[k], "edge", p);
    if (!je.is_array() || je.size() != 2) fail(p + ".edge", "expected a pair of labels");
    int a = label(je[0], g.vertex_count(), p + ".edge[0]"), b = label(je[1], g.vertex_count(), p + ".edge[1]");
    int e = g.edge_index(a, b);
    if (e < 0) fail(p + ".edge", "not an edge of the graph");
    if (seen[e]) fail(p + ".edge", "edge listed twice");
    seen[e] = 1;
    theta[e] = number(member(ja[k], "theta", p), p + ".theta");
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (!seen[e]) fail("$.angles", "missing edge " + edge_key(g.edges()[e][0], g.edges()[e][1]));
  return theta;
}

Json angles_to_json(const PlaneGraph& g, const std::vector<double>& theta) {
  Json list = Json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    Json item;
    item["edge"] = edge_pair(g.edges()[e][0], g.edges()[e][1]);
    item["theta"] = theta[e];
    list.push_back(item);
  }
  Json j;
  j["angles"] = list;
  return j;
}

std::vector<double> reals_from_json(const Json& j, const std::string& path) {
  array_at(j, path);
  std::vector<double> out;
  for (size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

Json reals_to_json(const std::vector<double>& xs) {
  Json j = Json::array();
  for (double x : xs) {
    if (std::isinf(x)) j.push_back("inf");
    else j.push_back(x);
  }
  return j;
}

AdSPolyhedron ads_from_json(const Json& j) {
  auto x = reals_from_json(member(j, "x", "$"), "$.x");
  auto y = reals_from_json(member(j, "y", "$"), "$.y");
  if (x.size() != y.size()) fail("$.y", "length differs from $.x");
  if (x.size() < 4) fail("$.x", "at least 4 vertices are required");
  return AdSPolyhedron::from_reals(x, y);
}

Json ads_to_json(const AdSPolyhedron& P) {
  Json j;
  j["x"] = reals_to_json(P.left.coordinates());
  j["y"] = reals_to_json(P.right.coordinates());
  return j;
}

HPPolyhedron hp_from_json(const Json& j) {
  auto x = reals_from_json(member(j, "polygon", "$"), "$.polygon");
  auto v = reals_from_json(member(j, "velocity", "$"), "$.velocity");
  if (x.size() != v.size()) fail("$.velocity", "length differs from $.polygon");
  for (size_t k = 0; k < v.size(); ++k)
    if (!std::isfinite(v[k])) fail("$.velocity[" + std::to_string(k) + "]", "expected a finite number");
  return HPPolyhedron{IdealPolygon::from_reals(x), v};
}

Json hp_to_json(const HPPolyhedron& P) {
  Json j;
  j["polygon"] = reals_to_json(P.polygon.coordinates());
  j["velocity"] = P.velocity;
  return j;
}

Json certificate_to_json(const PlaneGraph& g, const FeasibilityCertificate& cert) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["system"] = cert.system == ConditionSystem::Rivin ? "rivin" : "ads";
  j["feasible"] = cert.feasible;
  j["margin"] = rational_to_string(cert.margin);
  j["units"] = cert.system == ConditionSystem::Rivin ? "pi" : "radians";
  j["edges"] = Json::array();
  for (auto [a, b] : g.edges()) j["edges"].push_back(edge_pair(a, b));
  j["witness"] = Json::array();
  for (const auto& w : cert.witness) j["witness"].push_back(rational_to_string(w));
  j["cuts"] = cert.cuts;
  j["lp_rounds"] = cert.lp_rounds;
  return j;
}

FeasibilityCertificate certificate_from_json(const Json& j) {
  FeasibilityCertificate c;
  const Json& js = member(j, "system", "$");
  if (js == "rivin") c.system = ConditionSystem::Rivin;
  else if (js == "ads") c.system = ConditionSystem::Ads;
  else fail("$.system", "expected \"rivin\" or \"ads\"");
  const Json& jf = member(j, "feasible", "$");
  if (!jf.is_boolean()) fail("$.feasible", "expected a boolean");
  c.feasible = jf.get<bool>();
  auto rational = [](const Json& x, const std::string& path) {
    if (!x.is_string()) fail(path, "expected a \"p/q\" string");
    try {
      return rational_from_string(x.get<std::string>());
    } catch (const std::exception&) {
      fail(path, "malformed rational");
    }
  };
  c.margin = rational(member(j, "margin", "$"), "$.margin");
  const Json& jw = array_at(member(j, "witness", "$"), "$.witness");
  for (size_t k = 0; k < jw.size(); ++k) c.witness.push_back(rational(jw[k], "$.witness[" + std::to_string(k) + "]"));
  const Json& jc = array_at(member(j, "cuts", "$"), "$.cuts");
  for (size_t k = 0; k < jc.size(); ++k) {
    std::string p = "$.cuts[" + std::to_string(k) + "]";
    std::vector<int> cut;
    for (const auto& e : array_at(jc[k], p)) {
      if (!e.is_number_integer()) fail(p, "expected edge indices");
      cut.push_back(e.get<int>());
    }
    c.cuts.push_back(cut);
  }
  c.lp_rounds = j.value("lp_rounds", 0);
  return c;
}

Json report_to_json(const PlaneGraph& g, const ConditionReport& report) {
  Json j;
  j["ok"] = report.ok();
  j["circuits_checked"] = report.circuits_checked;
  j["violations"] = Json::array();
  for (const auto& v : report.violations) {
    Json item;
    item["kind"] = violation_kind_name(v.kind);
    if (v.vertex >= 0) item["vertex"] = v.vertex + 1;
    item["edges"] = Json::array();
    for (int e : v.edges) item["edges"].push_back(edge_pair(g.edges()[e][0], g.edges()[e][1]));
    item["value"] = v.value;
    j["violations"].push_back(item);
  }
  return j;
}

Json edge_map(const PlaneGraph& g, const std::vector<double>& values) {
  Json j = Json::object();
  for (int e = 0; e < g.edge_count(); ++e) j[edge_key(g.edges()[e][0], g.edges()[e][1])] = values[e];
  return j;
}

Json edge_map(const MarkedTriangulation& tri, const std::vector<double>& values) {
  Json j = Json::object();
  for (int e = 0; e < tri.edge_count(); ++e) {
    const auto& te = tri.edges[e];
    std::string key = edge_key(te.a, te.b);
    if (te.side == Side::Top) key += ":top";
    if (te.side == Side::Bottom) key += ":bottom";
    j[key] = values[e];
  }
  return j;
}

} // namespace quadric
