// Command-line front end.
//
// Exit codes: 0 pass / feasible, 1 error (malformed input, budget exceeded),
// 2 failed check / infeasible / not in the cone, 3 continuation or
// minimization failure (StepCollapse, CombinatoricsChanged, ...).

#include "quadric/ads.h"
#include "quadric/catalog.h"
#include "quadric/conditions.h"
#include "quadric/error.h"
#include "quadric/hp.h"
#include "quadric/inscribe.h"
#include "quadric/io.h"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

using namespace quadric;

namespace {

struct RunConfig {
  double tolerance = kDefaultTolerance;
  std::uint64_t budget = kDefaultCircuitBudget;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int exit_code(const Error& e) {
  switch (e.kind()) {
  case ErrorKind::NotInCone:
  case ErrorKind::RivinViolated:
    return 2;
  case ErrorKind::StepCollapse:
  case ErrorKind::CombinatoricsChanged:
  case ErrorKind::CombinatoricsMismatch:
  case ErrorKind::NoConvergence:
    return 3;
  default:
    return 1;
  }
}

void emit(const RunConfig& cfg, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) std::cout << text;
  else write_text_file(cfg.out, text);
}

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Json verification_json(const InscriptionReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["quadric_residual"] = r.quadric_residual;
  j["convex"] = r.convex;
  j["convexity_margin"] = r.convexity_margin;
  j["midpoint_margin"] = r.midpoint_margin;
  return j;
}

// Writes the mesh (OBJ unless the name ends in .json) and returns its report.
InscriptionReport write_mesh(const InscribedMesh& mesh, const std::string& path) {
  InscriptionReport r = verify_inscribed(mesh);
  if (!path.empty()) write_text_file(path, ends_with(path, ".json") ? export_json(mesh) : export_obj(mesh));
  return r;
}

int cmd_check(const RunConfig& cfg, const std::string& graph_path, const std::string& angles_path,
              const std::string& system) {
  PlaneGraph g = graph_from_json(parse_json(read_text_file(graph_path), graph_path));
  Json j = header("check");
  j["system"] = system;
  if (!angles_path.empty()) {
    auto theta = angles_from_json(parse_json(read_text_file(angles_path), angles_path), g);
    ConditionReport report = system == "rivin" ? check_rivin_conditions(g, theta, cfg.tolerance, cfg.budget)
                                               : check_ads_conditions(EquatorGraph(g), theta, cfg.tolerance, cfg.budget);
    j["report"] = report_to_json(g, report);
    emit(cfg, j);
    return report.ok() ? 0 : 2;
  }
  FeasibilityCertificate cert = system == "rivin" ? rivin_feasibility(g, cfg.budget)
                                                  : feasibility(EquatorGraph(g), ConditionSystem::Ads, cfg.budget);
  bool replayed = system == "rivin" ? replay_rivin(g, cert, cfg.budget) : replay(EquatorGraph(g), cert, cfg.budget);
  j["certificate"] = certificate_to_json(g, cert);
  j["replayed"] = replayed;
  emit(cfg, j);
  if (!replayed) return 1;
  return cert.feasible ? 0 : 2;
}

int cmd_realize(const RunConfig& cfg, const std::string& graph_path, const std::string& angles_path,
                const std::string& geometry, const std::string& mesh_path, double min_step) {
  EquatorGraph g(graph_from_json(parse_json(read_text_file(graph_path), graph_path)));
  auto theta = angles_from_json(parse_json(read_text_file(angles_path), angles_path), g.plane());
  MinimizeOptions mo;
  mo.seed = cfg.seed.value_or(1);
  Json j = header("realize");
  j["geometry"] = geometry;
  j["seed"] = mo.seed;
  InscribedMesh mesh;
  std::vector<double> measured;
  if (geometry == "hp") {
    HPRealization r = hp_from_angles(g, theta, mo);
    measured = hp_angles(r.polyhedron, g).theta;
    j["polyhedron"] = hp_to_json(r.polyhedron);
    j["minimization"] = {{"value", r.minimization.value},
                         {"gradient_norm", r.minimization.gradient_norm},
                         {"iterations", r.minimization.iterations},
                         {"multistart_spread", r.minimization.multistart_spread}};
    j["normal_residual"] = r.normal_residual;
    mesh = inscribe(r.polyhedron, g);
  } else {
    ContinuationOptions co;
    co.hp = mo;
    co.min_step = min_step;
    AdSRealization r = ads_from_angles(g, theta, co);
    AdSMeasurement m = measure(r.polyhedron, g);
    measured = m.theta;
    j["polyhedron"] = ads_to_json(r.polyhedron);
    j["continuation"] = {{"steps", r.report.steps},
                         {"rejected", r.report.rejected},
                         {"t_reached", r.report.t_reached}};
    j["earthquake_residual"] = m.earthquake_residual;
    mesh = inscribe(r.polyhedron, g);
  }
  double residual = 0.0;
  for (size_t e = 0; e < theta.size(); ++e) residual = std::max(residual, std::abs(measured[e] - theta[e]));
  j["measured_angles"] = edge_map(g.plane(), measured);
  j["angle_residual"] = residual;
  InscriptionReport vr = write_mesh(mesh, mesh_path);
  j["verification"] = verification_json(vr);
  if (!mesh_path.empty()) j["mesh"] = mesh_path;
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!mesh_path.empty()) write_text_file(mesh_path + ".report.json", text);
  return vr.ok() ? 0 : 1;
}

int cmd_angles(const RunConfig& cfg, const std::string& polygons_path) {
  AdSPolyhedron P = ads_from_json(parse_json(read_text_file(polygons_path), polygons_path));
  AdSValidation v = validate(P);
  if (!v.valid) {
    std::cerr << "polygons are not in the same cyclic order\n";
    return 2;
  }
  if (v.degenerate) {
    std::cerr << "degenerate: the left and right polygons coincide, so the polyhedron is flat\n";
    return 2;
  }
  AdSMeasurement m = measure(P);
  LaminationPair lam = laminations_from_pair(P.left, P.right);
  Json j = header("angles");
  j["graph"] = graph_to_json(m.graph.plane());
  j["angles"] = angles_to_json(m.graph.plane(), m.theta)["angles"];
  auto lam_json = [](const std::vector<DiagonalWeight>& l) {
    Json a = Json::array();
    for (const auto& d : l) a.push_back({{"diagonal", {d.diagonal[0] + 1, d.diagonal[1] + 1}}, {"weight", d.weight}});
    return a;
  };
  j["laminations"] = {{"top", lam_json(lam.top)}, {"bottom", lam_json(lam.bottom)}, {"replay_residual", lam.residual}};
  const MarkedTriangulation& tri = m.refinement.tri;
  j["shears"] = {{"s", edge_map(tri, m.s)}, {"s_left", edge_map(tri, m.s_left)}, {"s_right", edge_map(tri, m.s_right)}};
  j["earthquake_residual"] = m.earthquake_residual;
  emit(cfg, j);
  return 0;
}

int cmd_survey(const RunConfig& cfg, int n) {
  if (!cfg.seed) throw Error(ErrorKind::InvalidInput, "survey requires --seed");
  Json j = header("survey");
  j["n"] = n;
  j["seed"] = *cfg.seed;
  j["graphs"] = Json::array();
  int violations = 0;
  for (const PlaneGraph& g : polyhedral_graphs(n)) {
    FeasibilityCertificate rivin = rivin_feasibility(g, cfg.budget);
    auto cycles = hamiltonian_cycles(g);
    Json per_cycle = Json::array();
    bool ads_any = false;
    for (const auto& c : cycles) {
      EquatorGraph eg(g.relabeled(c));
      FeasibilityCertificate cert = feasibility(eg, ConditionSystem::Ads, cfg.budget);
      ads_any = ads_any || cert.feasible;
      Json cyc = Json::array();
      for (int v : c) cyc.push_back(v + 1);
      per_cycle.push_back({{"cycle", cyc}, {"feasible", cert.feasible}});
    }
    bool consistent = ads_any == (rivin.feasible && !cycles.empty());
    violations += !consistent;
    Json item;
    item["graph"] = graph_to_json(g);
    item["rivin_feasible"] = rivin.feasible;
    item["hamiltonian"] = !cycles.empty();
    item["ads_feasible"] = ads_any;
    item["cycles"] = per_cycle;
    item["consistent"] = consistent;
    j["graphs"].push_back(item);
  }
  j["count"] = j["graphs"].size();
  j["violations"] = violations;
  emit(cfg, j);
  return violations ? 2 : 0;
}

int cmd_export(const RunConfig& cfg, const std::string& input, const std::string& geometry,
               const std::string& format) {
  Json in = parse_json(read_text_file(input), input);
  InscribedMesh mesh;
  if (geometry == "ads") {
    AdSPolyhedron P = ads_from_json(in);
    mesh = inscribe(P, ads_hull(P).graph);
  } else if (geometry == "hp") {
    HPPolyhedron P = hp_from_json(in);
    mesh = inscribe(P, hp_hull(P).graph);
  } else {
    std::vector<std::complex<double>> pts;
    const Json& jp = in.at("points");
    for (size_t k = 0; k < jp.size(); ++k) pts.emplace_back(jp[k].at(0).get<double>(), jp[k].at(1).get<double>());
    mesh = inscribe_sphere(pts);
  }
  InscriptionReport r = verify_inscribed(mesh);
  std::string text = format == "json" ? export_json(mesh) : export_obj(mesh);
  if (cfg.out.empty()) std::cout << text;
  else write_text_file(cfg.out, text);
  if (!r.ok()) std::cerr << "mesh failed verification\n";
  return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideal polyhedra in anti-de Sitter and half-pipe geometry"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", cfg.tolerance, "Tolerance for vertex sums")->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "Circuit enumeration budget")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
  };

  std::string graph_path, angles_path, system = "ads", geometry = "ads", polygons_path, input, format = "obj";
  int n = 0;
  double min_step = 1e-8;

  auto* check = app.add_subcommand("check", "Check angles against the conditions, or decide feasibility");
  check->add_option("graph", graph_path, "Graph JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--angles", angles_path, "Angles JSON")->check(CLI::ExistingFile);
  check->add_option("--system", system, "Condition system")->check(CLI::IsMember({"rivin", "ads"}));
  add_common(check);

  auto* realize = app.add_subcommand("realize", "Realize angles by a polyhedron and write its mesh");
  realize->add_option("graph", graph_path, "Graph JSON")->required()->check(CLI::ExistingFile);
  realize->add_option("angles", angles_path, "Angles JSON")->required()->check(CLI::ExistingFile);
  realize->add_option("--geometry", geometry, "Target geometry")->check(CLI::IsMember({"hp", "ads"}));
  realize->add_option("--min-step", min_step, "Smallest continuation step")->check(CLI::PositiveNumber);
  add_common(realize);

  auto* angles = app.add_subcommand("angles", "Measure the polyhedron of a pair of polygons");
  angles->add_option("polygons", polygons_path, "Polygons JSON {x, y}")->required()->check(CLI::ExistingFile);
  add_common(angles);

  auto* survey = app.add_subcommand("survey", "Check the realizability equivalence over the graph catalog");
  survey->add_option("--n", n, "Number of vertices (4..8)")->required()->check(CLI::Range(4, 8));
  add_common(survey);

  auto* exporter = app.add_subcommand("export", "Inscribe a polyhedron and export its mesh");
  exporter->add_option("input", input, "Polyhedron JSON")->required()->check(CLI::ExistingFile);
  exporter->add_option("--geometry", geometry, "Input geometry")->check(CLI::IsMember({"hp", "ads", "sphere"}));
  exporter->add_option("--format", format, "Mesh format")->check(CLI::IsMember({"obj", "json"}));
  add_common(exporter);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (auto* sub : app.get_subcommands())
    if (sub->count("--seed")) cfg.seed = seed;

  try {
    if (*check) return cmd_check(cfg, graph_path, angles_path, system);
    if (*realize) return cmd_realize(cfg, graph_path, angles_path, geometry, cfg.out, min_step);
    if (*angles) return cmd_angles(cfg, polygons_path);
    if (*survey) return cmd_survey(cfg, n);
    if (*exporter) return cmd_export(cfg, input, geometry, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
