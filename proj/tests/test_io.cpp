#include "doctest.h"

#include "support.h"

#include "quadric/catalog.h"
#include "quadric/io.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

using namespace quadric;
using namespace quadric::testing;

namespace {

std::string error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::set<std::vector<int>> face_sets(const PlaneGraph& g) {
  std::set<std::vector<int>> out;
  for (auto f : g.faces()) {
    std::sort(f.begin(), f.end());
    out.insert(f);
  }
  return out;
}

} // namespace

TEST_CASE("graph round trip") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    auto g = random_marked_graph(rng, 4 + t % 8);
    auto j = graph_to_json(g.plane());
    auto h = graph_from_json(j);
    CHECK(h.edges() == g.edges());
    CHECK(h.rotation() == g.plane().rotation());
    CHECK(EquatorGraph(h).same_marking(g));
    CHECK(graph_to_json(graph_from_json(parse_json(j.dump(), "graph"))) == j);
    // Without the rotation the embedding is recovered from the edges up to mirror,
    // so the faces agree as vertex sets.
    j.erase("rotation");
    auto e = graph_from_json(j);
    CHECK(e.edges() == g.edges());
    CHECK(face_sets(e) == face_sets(g.plane()));
  }
}

TEST_CASE("graph errors name the JSON path") {
  auto bad_label = parse_json(R"({"n": 4, "edges": [[1,2],[2,3],[3,4],[4,9]]})", "graph");
  CHECK(error_message([&] { graph_from_json(bad_label); }).find("$.edges[3][1]") != std::string::npos);
  auto no_n = parse_json(R"({"edges": []})", "graph");
  CHECK(error_message([&] { graph_from_json(no_n); }).find("missing key \"n\"") != std::string::npos);
  auto loop = parse_json(R"({"n": 4, "edges": [[1,1]]})", "graph");
  CHECK(error_message([&] { graph_from_json(loop); }).find("$.edges[0]") != std::string::npos);
  auto str = parse_json(R"({"n": 4, "edges": [[1,"2"]]})", "graph");
  CHECK(error_message([&] { graph_from_json(str); }).find("$.edges[0][1]") != std::string::npos);
  CHECK_THROWS_AS(parse_json("{\"n\": ", "graph"), Error);

  auto g = k4_graph();
  auto j = graph_to_json(g.plane());
  j["rotation"]["2"] = Json::array({1, 3});
  CHECK(error_message([&] { graph_from_json(j); }).find("$.rotation") != std::string::npos);
}

TEST_CASE("angles") {
  auto g = k4_graph();
  auto theta = tetra_angles(g);
  auto back = angles_from_json(angles_to_json(g.plane(), theta), g.plane());
  CHECK(back == theta);

  // Listed in any order, with rationals as strings.
  Json j = parse_json(R"({"angles": [
    {"edge": [4, 1], "theta": "-1/7"}, {"edge": [1, 2], "theta": -0.2},
    {"edge": [2, 3], "theta": -0.2}, {"edge": [3, 4], "theta": "-1/7"},
    {"edge": [2, 4], "theta": 0.35}, {"edge": [1, 3], "theta": 0.35}]})",
                      "angles");
  auto th = angles_from_json(j, g.plane());
  CHECK(th[g.edge_index(0, 3)] == doctest::Approx(-1.0 / 7));
  CHECK(th[g.edge_index(0, 1)] == -0.2);

  j["angles"].erase(0);
  CHECK(error_message([&] { angles_from_json(j, g.plane()); }).find("missing edge 1-4") != std::string::npos);
  j["angles"].push_back({{"edge", {2, 3}}, {"theta", 0.1}});
  CHECK(error_message([&] { angles_from_json(j, g.plane()); }).find("listed twice") != std::string::npos);
  Json junk = parse_json(R"({"angles": [{"edge": [1, 2], "theta": "abc"}]})", "angles");
  CHECK(error_message([&] { angles_from_json(junk, g.plane()); }).find("$.angles[0].theta") != std::string::npos);
}

TEST_CASE("polyhedra") {
  auto P = tetra_fixture();
  auto j = ads_to_json(P);
  CHECK(j["x"][0] == "inf");
  auto Q = ads_from_json(j);
  CHECK(Q.left.coordinates() == P.left.coordinates());
  CHECK(Q.right.coordinates() == P.right.coordinates());

  auto mixed = parse_json(R"({"x": ["inf", 0, 1, "2/1"], "y": ["+inf", "0", "1", 3]})", "polygons");
  auto M = ads_from_json(mixed);
  CHECK(M.right.coordinates()[3] == 3.0);
  CHECK(M.left.coordinates()[3] == 2.0);

  auto short_y = parse_json(R"({"x": ["inf", 0, 1, 2], "y": ["inf", 0, 1]})", "polygons");
  CHECK(error_message([&] { ads_from_json(short_y); }).find("$.y") != std::string::npos);

  std::mt19937_64 rng(2);
  auto H = random_hp(rng, 6);
  auto K = hp_from_json(hp_to_json(H));
  CHECK(K.polygon.coordinates() == H.polygon.coordinates());
  CHECK(K.velocity == H.velocity);
  auto inf_velocity = parse_json(R"({"polygon": ["inf", 0, 1, 2], "velocity": [0, 0, 0, "inf"]})", "hp");
  CHECK(error_message([&] { hp_from_json(inf_velocity); }).find("$.velocity[3]") != std::string::npos);
}

TEST_CASE("certificates") {
  auto g = k4_graph();
  auto cert = feasibility(g, ConditionSystem::Ads);
  auto j = certificate_to_json(g.plane(), cert);
  CHECK(j["schema_version"] == kSchemaVersion);
  auto back = certificate_from_json(parse_json(j.dump(), "certificate"));
  CHECK(back.feasible == cert.feasible);
  CHECK(back.margin == cert.margin);
  CHECK(back.witness == cert.witness);
  CHECK(back.cuts == cert.cuts);
  CHECK(replay(g, back));

  auto rd = rhombic_dodecahedron_graph();
  auto rr = rivin_feasibility(rd);
  auto rb = certificate_from_json(certificate_to_json(rd, rr));
  CHECK_FALSE(rb.feasible);
  CHECK(replay_rivin(rd, rb));

  j["witness"][0] = "1/0x";
  CHECK(error_message([&] { certificate_from_json(j); }).find("$.witness[0]") != std::string::npos);
  j["system"] = "euclid";
  CHECK(error_message([&] { certificate_from_json(j); }).find("$.system") != std::string::npos);
}

TEST_CASE("reports and edge maps") {
  auto g = k4_graph();
  auto theta = tetra_angles(g);
  auto ok = report_to_json(g.plane(), check_ads_conditions(g, theta));
  CHECK(ok["ok"] == true);
  CHECK(ok["violations"].empty());
  for (auto& t : theta) t = -t;
  auto bad = report_to_json(g.plane(), check_ads_conditions(g, theta));
  CHECK(bad["ok"] == false);
  CHECK_FALSE(bad["violations"].empty());
  CHECK(bad["violations"][0].contains("kind"));

  auto m = edge_map(g.plane(), tetra_angles(g));
  CHECK(m.size() == 6u);
  CHECK(m.contains("1-2"));
  CHECK(m.contains("2-4"));
}
