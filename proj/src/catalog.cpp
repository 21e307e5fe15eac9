#include "quadric/catalog.h"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace quadric {

namespace {

using Face = std::array<int, 3>;

// Rotates a face so that it starts with the dart a -> b, if it contains it.
bool starts_with_dart(Face& f, int a, int b) {
  for (int k = 0; k < 3; ++k) {
    if (f[k] == a && f[(k + 1) % 3] == b) {
      std::rotate(f.begin(), f.begin() + k, f.end());
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> as_lists(const std::vector<Face>& faces) {
  std::vector<std::vector<int>> out;
  for (const auto& f : faces) out.push_back({f[0], f[1], f[2]});
  return out;
}

} // namespace

std::vector<PlaneGraph> sphere_triangulations(int n) {
  if (n < 4) throw Error(ErrorKind::InvalidInput, "triangulations need at least 4 vertices");
  std::vector<Face> start{{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  for (int v = 4; v < n; ++v) {
    Face f = start.front();
    start.erase(start.begin());
    start.push_back({f[0], f[1], v});
    start.push_back({f[1], f[2], v});
    start.push_back({f[2], f[0], v});
  }
  std::set<std::vector<int>> seen;
  std::vector<PlaneGraph> out;
  std::queue<std::vector<Face>> queue;
  auto visit = [&](const std::vector<Face>& faces) {
    PlaneGraph g = PlaneGraph::from_faces(n, as_lists(faces));
    if (seen.insert(g.canonical_code()).second) {
      out.push_back(g);
      queue.push(faces);
    }
  };
  visit(start);
  while (!queue.empty()) {
    auto faces = queue.front();
    queue.pop();
    std::set<std::array<int, 2>> edges;
    for (const auto& f : faces)
      for (int k = 0; k < 3; ++k) edges.insert({std::min(f[k], f[(k + 1) % 3]), std::max(f[k], f[(k + 1) % 3])});
    for (auto [a, b] : edges) {
      int fi = -1, fj = -1;
      Face f1{}, f2{};
      for (size_t k = 0; k < faces.size(); ++k) {
        Face f = faces[k];
        if (starts_with_dart(f, a, b)) fi = static_cast<int>(k), f1 = f;
        f = faces[k];
        if (starts_with_dart(f, b, a)) fj = static_cast<int>(k), f2 = f;
      }
      int c = f1[2], d = f2[2];
      if (fi < 0 || fj < 0 || c == d || edges.count({std::min(c, d), std::max(c, d)})) continue;
      auto flipped = faces;
      flipped[fi] = {a, d, c};
      flipped[fj] = {d, b, c};
      visit(flipped);
    }
  }
  return out;
}

std::vector<PlaneGraph> polyhedral_graphs(int n) {
  if (n < 4 || n > 8) throw Error(ErrorKind::TooLarge, "the built-in catalog covers 4 <= N <= 8");
  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<int>, PlaneGraph>> found;
  for (const PlaneGraph& t : sphere_triangulations(n)) {
    const auto& edges = t.edges();
    int m = static_cast<int>(edges.size());
    std::vector<char> removed(m, 0);
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = t.degree(v);
    auto current_edges = [&]() {
      std::vector<std::array<int, 2>> es;
      for (int e = 0; e < m; ++e)
        if (!removed[e]) es.push_back(edges[e]);
      return es;
    };
    // Removing edges never restores 3-connectivity, so only 3-connected
    // subsets are extended (edges removed in increasing index order).
    std::function<void(int)> rec = [&](int from) {
      std::vector<std::vector<int>> rot(n);
      for (int v = 0; v < n; ++v)
        for (int w : t.rotation()[v])
          if (!removed[t.edge_index(v, w)]) rot[v].push_back(w);
      PlaneGraph g = PlaneGraph::from_rotation(n, rot);
      auto code = g.canonical_code();
      if (seen.insert(code).second) found.push_back({code, g});
      for (int e = from; e < m; ++e) {
        auto [a, b] = edges[e];
        if (degree[a] <= 3 || degree[b] <= 3) continue;
        removed[e] = 1;
        --degree[a];
        --degree[b];
        if (is_three_connected(n, current_edges())) rec(e + 1);
        removed[e] = 0;
        ++degree[a];
        ++degree[b];
      }
    };
    rec(0);
  }
  // Deterministic order: by edge count, then canonical code.
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.second.edge_count() != y.second.edge_count()) return x.second.edge_count() < y.second.edge_count();
    return x.first < y.first;
  });
  std::vector<PlaneGraph> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

PlaneGraph tetrahedron_graph() {
  return PlaneGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
}

PlaneGraph octahedron_graph() {
  // All pairs except the opposite ones (0,3), (1,4), (2,5).
  std::vector<std::array<int, 2>> e;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (b - a != 3) e.push_back({a, b});
  return PlaneGraph::from_edges(6, e);
}

PlaneGraph cube_graph() {
  std::vector<std::array<int, 2>> e;
  for (int a = 0; a < 8; ++a)
    for (int bit = 1; bit < 8; bit <<= 1)
      if (!(a & bit)) e.push_back({a, a | bit});
  return PlaneGraph::from_edges(8, e);
}

PlaneGraph rhombic_dodecahedron_graph() {
  // Cube corners 0..7 (bits are coordinates) and one vertex per cube face.
  std::vector<std::array<int, 2>> e;
  int face = 8;
  for (int bit = 1; bit < 8; bit <<= 1)
    for (int val = 0; val < 2; ++val, ++face)
      for (int a = 0; a < 8; ++a)
        if (((a & bit) != 0) == (val == 1)) e.push_back({a, face});
  return PlaneGraph::from_edges(14, e);
}

} // namespace quadric
