#include "quadric/graph.h"

#include "quadric/exact.h"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace quadric {

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ")";
}

int position(const std::vector<int>& rot, int x) {
  auto it = std::find(rot.begin(), rot.end(), x);
  return it == rot.end() ? -1 : static_cast<int>(it - rot.begin());
}

bool connected_without(int n, const std::vector<std::vector<int>>& adj, int skip1, int skip2) {
  std::vector<char> seen(n, 0);
  int start = -1, total = 0;
  for (int v = 0; v < n; ++v)
    if (v != skip1 && v != skip2) {
      if (start < 0) start = v;
      ++total;
    }
  if (start < 0) return true;
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (w == skip1 || w == skip2 || seen[w]) continue;
      seen[w] = 1;
      ++count;
      stack.push_back(w);
    }
  }
  return count == total;
}

} // namespace

bool is_three_connected(int n, const std::vector<std::array<int, 2>>& edges) {
  if (n < 4) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  if (!connected_without(n, adj, -1, -1)) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!connected_without(n, adj, a, b)) return false;
  return true;
}

void PlaneGraph::build() {
  int n = n_;
  edges_.clear();
  for (int v = 0; v < n; ++v) {
    std::set<int> seen;
    for (int w : rotation_[v]) {
      if (w < 0 || w >= n || w == v)
        throw Error(ErrorKind::InvalidGraph, "bad neighbour of vertex " + std::to_string(v + 1));
      if (!seen.insert(w).second) throw Error(ErrorKind::InvalidGraph, "repeated edge " + pair_str(v, w));
      if (position(rotation_[w], v) < 0)
        throw Error(ErrorKind::InvalidGraph, "rotation is not symmetric at " + pair_str(v, w));
      if (v < w) edges_.push_back({v, w});
    }
  }
  std::sort(edges_.begin(), edges_.end());

  vertex_edges_.assign(n, {});
  for (int v = 0; v < n; ++v)
    for (int w : rotation_[v]) vertex_edges_[v].push_back(edge_index(v, w));

  // Trace the left-hand faces of all darts.
  std::map<std::pair<int, int>, int> dart_face;
  faces_.clear();
  face_edges_.clear();
  for (int u = 0; u < n; ++u)
    for (int v : rotation_[u]) {
      if (dart_face.count({u, v})) continue;
      int f = static_cast<int>(faces_.size());
      std::vector<int> cyc, cyc_edges;
      int a = u, b = v;
      while (!dart_face.count({a, b})) {
        dart_face[{a, b}] = f;
        cyc.push_back(a);
        cyc_edges.push_back(edge_index(a, b));
        const auto& rb = rotation_[b];
        int k = position(rb, a);
        int c = rb[(k - 1 + static_cast<int>(rb.size())) % static_cast<int>(rb.size())];
        a = b;
        b = c;
      }
      if (a != u || b != v) throw Error(ErrorKind::NotPlanar, "inconsistent rotation system");
      faces_.push_back(cyc);
      face_edges_.push_back(cyc_edges);
    }
  edge_faces_.assign(edges_.size(), {-1, -1});
  for (size_t e = 0; e < edges_.size(); ++e) {
    edge_faces_[e][0] = dart_face.at({edges_[e][0], edges_[e][1]});
    edge_faces_[e][1] = dart_face.at({edges_[e][1], edges_[e][0]});
  }
  if (n - edge_count() + face_count() != 2)
    throw Error(ErrorKind::NotPlanar, "rotation system does not describe a sphere embedding");
  if (!is_three_connected(n, edges_)) throw Error(ErrorKind::NotThreeConnected, "graph is not 3-connected");
}

PlaneGraph PlaneGraph::from_rotation(int n, std::vector<std::vector<int>> rotation) {
  if (static_cast<int>(rotation.size()) != n)
    throw Error(ErrorKind::InvalidGraph, "rotation must list every vertex");
  PlaneGraph g;
  g.n_ = n;
  g.rotation_ = std::move(rotation);
  g.build();
  return g;
}

PlaneGraph PlaneGraph::from_edges(int n, const std::vector<std::array<int, 2>>& edges) {
  using namespace boost;
  using BGraph = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                                property<edge_index_t, int>>;
  BGraph bg(n);
  std::set<std::array<int, 2>> seen;
  for (auto e : edges) {
    if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n || e[0] == e[1])
      throw Error(ErrorKind::InvalidGraph, "bad edge " + pair_str(e[0], e[1]));
    std::array<int, 2> s{std::min(e[0], e[1]), std::max(e[0], e[1])};
    if (!seen.insert(s).second) throw Error(ErrorKind::InvalidGraph, "repeated edge " + pair_str(s[0], s[1]));
    add_edge(s[0], s[1], bg);
  }
  int idx = 0;
  graph_traits<BGraph>::edge_iterator ei, ei_end;
  for (tie(ei, ei_end) = boost::edges(bg); ei != ei_end; ++ei) put(boost::edge_index, bg, *ei, idx++);

  using Embedding = std::vector<std::vector<graph_traits<BGraph>::edge_descriptor>>;
  Embedding emb(n);
  if (!boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg,
                                    boyer_myrvold_params::embedding = &emb[0]))
    throw Error(ErrorKind::NotPlanar, "graph is not planar");
  std::vector<std::vector<int>> rotation(n);
  for (int v = 0; v < n; ++v)
    for (auto e : emb[v]) {
      int s = static_cast<int>(source(e, bg)), t = static_cast<int>(target(e, bg));
      rotation[v].push_back(s == v ? t : s);
    }
  return from_rotation(n, rotation);
}

PlaneGraph PlaneGraph::from_faces(int n, const std::vector<std::vector<int>>& faces) {
  // In a positively oriented face (.., p, v, q, ..) the neighbour q is followed by p at v.
  std::vector<std::map<int, int>> succ(n);
  for (const auto& f : faces) {
    int k = static_cast<int>(f.size());
    for (int i = 0; i < k; ++i) {
      int p = f[(i + k - 1) % k], v = f[i], q = f[(i + 1) % k];
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidGraph, "face vertex out of range");
      if (!succ[v].emplace(q, p).second) throw Error(ErrorKind::InvalidGraph, "faces overlap");
    }
  }
  std::vector<std::vector<int>> rotation(n);
  for (int v = 0; v < n; ++v) {
    if (succ[v].empty()) throw Error(ErrorKind::InvalidGraph, "isolated vertex " + std::to_string(v + 1));
    int start = succ[v].begin()->first, w = start;
    do {
      rotation[v].push_back(w);
      auto it = succ[v].find(w);
      if (it == succ[v].end()) throw Error(ErrorKind::NotPlanar, "faces do not close up around a vertex");
      w = it->second;
    } while (w != start && rotation[v].size() <= succ[v].size());
    if (rotation[v].size() != succ[v].size())
      throw Error(ErrorKind::NotPlanar, "faces do not close up around a vertex");
  }
  return from_rotation(n, rotation);
}

int PlaneGraph::edge_index(int a, int b) const {
  std::array<int, 2> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

int PlaneGraph::left_face(int a, int b) const {
  int e = edge_index(a, b);
  if (e < 0) return -1;
  return edges_[e][0] == a ? edge_faces_[e][0] : edge_faces_[e][1];
}

PlaneGraph PlaneGraph::relabeled(const std::vector<int>& cycle) const {
  if (static_cast<int>(cycle.size()) != n_) throw Error(ErrorKind::InvalidInput, "relabeling must be a permutation");
  std::vector<int> inv(n_, -1);
  for (int k = 0; k < n_; ++k) inv.at(cycle[k]) = k;
  if (std::count(inv.begin(), inv.end(), -1)) throw Error(ErrorKind::InvalidInput, "relabeling must be a permutation");
  std::vector<std::vector<int>> rot(n_);
  for (int k = 0; k < n_; ++k)
    for (int w : rotation_[cycle[k]]) rot[k].push_back(inv[w]);
  return from_rotation(n_, rot);
}

PlaneGraph PlaneGraph::mirrored() const {
  auto rot = rotation_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return from_rotation(n_, rot);
}

std::vector<int> PlaneGraph::canonical_code() const {
  std::vector<int> best;
  for (int orient = 0; orient < 2; ++orient)
    for (int u = 0; u < n_; ++u)
      for (int v : rotation_[u]) {
        std::vector<int> label(n_, -1), ref(n_, -1), order;
        label[u] = 0;
        ref[u] = v;
        order.push_back(u);
        std::vector<int> code;
        for (size_t i = 0; i < order.size(); ++i) {
          int x = order[i];
          const auto& rot = rotation_[x];
          int d = static_cast<int>(rot.size());
          int k0 = position(rot, ref[x]);
          for (int j = 0; j < d; ++j) {
            int w = orient == 0 ? rot[(k0 + j) % d] : rot[(k0 - j + d) % d];
            if (label[w] < 0) {
              label[w] = static_cast<int>(order.size());
              ref[w] = x;
              order.push_back(w);
            }
            code.push_back(label[w]);
          }
          code.push_back(-1);
          if (!best.empty() && best < code) break; // already worse than the best code

        }
        if (best.empty() || code < best) best = code;
      }
  best.insert(best.begin(), n_);
  return best;
}

EquatorGraph::EquatorGraph(PlaneGraph g) : g_(std::move(g)) {
  int n = g_.vertex_count();
  for (int i = 0; i < n; ++i)
    if (g_.edge_index(i, (i + 1) % n) < 0)
      throw Error(ErrorKind::InvalidGraph, "missing equator edge " + pair_str(i, (i + 1) % n));
  std::vector<int> label(g_.face_count(), -1); // 0 top, 1 bottom
  std::vector<int> stack;
  auto mark = [&](int f, int s) {
    if (label[f] == s) return;
    if (label[f] >= 0) throw Error(ErrorKind::InvalidGraph, "equator does not separate the faces");
    label[f] = s;
    stack.push_back(f);
  };
  for (int i = 0; i < n; ++i) {
    mark(g_.left_face((i + 1) % n, i), 0);
    mark(g_.left_face(i, (i + 1) % n), 1);
  }
  auto equatorial = [&](int e) {
    auto [a, b] = g_.edges()[e];
    return b - a == 1 || (a == 0 && b == n - 1);
  };
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int e : g_.face_edges()[f]) {
      if (equatorial(e)) continue;
      auto ef = g_.edge_faces()[e];
      mark(ef[0] == f ? ef[1] : ef[0], label[f]);
    }
  }
  face_side_.resize(label.size());
  for (size_t f = 0; f < label.size(); ++f) {
    if (label[f] < 0) throw Error(ErrorKind::InvalidGraph, "face not reached from the equator");
    face_side_[f] = label[f] == 0 ? Side::Top : Side::Bottom;
  }
  side_.resize(g_.edge_count());
  for (int e = 0; e < g_.edge_count(); ++e) {
    auto ef = g_.edge_faces()[e];
    if (equatorial(e)) {
      if (face_side_[ef[0]] == face_side_[ef[1]])
        throw Error(ErrorKind::InvalidGraph, "equator edge with both faces on one side");
      side_[e] = Side::Equator;
    } else {
      side_[e] = face_side_[ef[0]];
    }
  }
}

bool EquatorGraph::same_marking(const EquatorGraph& other) const {
  if (n() != other.n() || edges() != other.edges()) return false;
  for (int e = 0; e < edge_count(); ++e)
    if (side_[e] != other.side_[e]) return false;
  return true;
}

bool EquatorGraph::refines(const EquatorGraph& coarse) const {
  if (n() != coarse.n()) return false;
  for (int e = 0; e < coarse.edge_count(); ++e) {
    auto [a, b] = coarse.edges()[e];
    int f = edge_index(a, b);
    if (f < 0 || side_[f] != coarse.side_[e]) return false;
  }
  const auto& faces = coarse.plane().faces();
  for (int e = 0; e < edge_count(); ++e) {
    auto [a, b] = edges()[e];
    if (coarse.edge_index(a, b) >= 0) continue;
    bool inside = false;
    for (size_t f = 0; f < faces.size() && !inside; ++f)
      inside = coarse.face_side_[f] == side_[e] &&
               std::count(faces[f].begin(), faces[f].end(), a) && std::count(faces[f].begin(), faces[f].end(), b);
    if (!inside) return false;
  }
  return true;
}

Refinement refine(const EquatorGraph& g) {
  int n = g.n();
  std::vector<std::array<int, 2>> top, bottom;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge_side(e) == Side::Top) top.push_back(g.edges()[e]);
    if (g.edge_side(e) == Side::Bottom) bottom.push_back(g.edges()[e]);
  }
  const auto& faces = g.plane().faces();
  for (size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].size() <= 3) continue;
    auto labels = faces[f];
    std::sort(labels.begin(), labels.end());
    auto& target = g.face_side(static_cast<int>(f)) == Side::Top ? top : bottom;
    for (size_t j = 2; j + 1 < labels.size(); ++j) target.push_back({labels[0], labels[j]});
  }
  Refinement r;
  r.tri = MarkedTriangulation::from_diagonals(n, top, bottom);
  r.graph_to_tri.assign(g.edge_count(), -1);
  r.tri_to_graph.assign(r.tri.edge_count(), -1);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edges()[e];
    int t = r.tri.find_edge(a, b, g.edge_side(e));
    r.graph_to_tri[e] = t;
    r.tri_to_graph[t] = e;
  }
  return r;
}

EquatorGraph graph_of_triangulation(const MarkedTriangulation& tri) {
  std::vector<std::vector<int>> faces;
  for (const auto& f : tri.faces) faces.push_back({f[0], f[1], f[2]});
  std::set<std::array<int, 2>> seen;
  for (const auto& e : tri.edges)
    if (!seen.insert({e.a, e.b}).second)
      throw Error(ErrorKind::InvalidGraph, "top and bottom share the diagonal " + pair_str(e.a, e.b));
  return EquatorGraph(PlaneGraph::from_faces(tri.n, faces));
}

std::vector<bool> equator_mask(const EquatorGraph& g) {
  std::vector<bool> m(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) m[e] = g.is_equator(e);
  return m;
}

std::vector<std::vector<int>> dual_circuits(const PlaneGraph& g, const std::vector<bool>& equator,
                                            const CircuitOptions& options) {
  int nf = g.face_count();
  std::vector<std::vector<std::pair<int, int>>> adj(nf); // (face, edge)
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [f0, f1] = g.edge_faces()[e];
    adj[f0].push_back({f1, e});
    adj[f1].push_back({f0, e});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::set<std::vector<int>> stars;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto s = g.vertex_edges()[v];
    std::sort(s.begin(), s.end());
    stars.insert(s);
  }

  std::vector<std::vector<int>> out;
  std::uint64_t work = 0;
  std::vector<char> on_path(nf, 0);
  std::vector<int> path_edges;
  int eq_count = 0;
  int start = 0;
  std::function<void(int)> dfs = [&](int f) {
    if (++work > options.budget)
      throw Error(ErrorKind::TooLarge, "circuit enumeration exceeded the budget of " +
                                           std::to_string(options.budget));
    for (auto [h, e] : adj[f]) {
      if (!path_edges.empty() && e == path_edges.back()) continue;
      int add = equator[e] ? 1 : 0;
      if (options.max_equator_edges >= 0 && eq_count + add > options.max_equator_edges) continue;
      if (h == start) {
        if (path_edges.size() < 2 || path_edges.front() > e) continue;
        if (options.exact_equator_edges >= 0 && eq_count + add != options.exact_equator_edges) continue;
        std::vector<int> c = path_edges;
        c.push_back(e);
        std::sort(c.begin(), c.end());
        if (options.skip_faces && stars.count(c)) continue;
        out.push_back(std::move(c));
        continue;
      }
      if (h < start || on_path[h]) continue;
      on_path[h] = 1;
      path_edges.push_back(e);
      eq_count += add;
      dfs(h);
      eq_count -= add;
      path_edges.pop_back();
      on_path[h] = 0;
    }
  };
  for (start = 0; start < nf; ++start) {
    on_path[start] = 1;
    dfs(start);
    on_path[start] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

DualGraph dual_graph(const EquatorGraph& g) {
  DualGraph d;
  d.vertex_count = g.plane().face_count();
  for (int e = 0; e < g.edge_count(); ++e) {
    d.edges.push_back(g.plane().edge_faces()[e]);
    d.equator.push_back(g.is_equator(e));
  }
  d.faces = g.plane().vertex_edges();
  return d;
}

std::vector<std::vector<int>> hamiltonian_cycles(const PlaneGraph& g, std::uint64_t node_budget) {
  int n = g.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : g.edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<std::vector<int>> out;
  std::vector<int> path{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  std::uint64_t nodes = 0;
  std::function<void()> rec = [&]() {
    if (++nodes > node_budget) throw Error(ErrorKind::TooLarge, "Hamiltonian cycle search exceeded its budget");
    int v = path.back();
    if (static_cast<int>(path.size()) == n) {
      if (path[1] < path.back() && std::binary_search(adj[v].begin(), adj[v].end(), 0)) out.push_back(path);
      return;
    }
    for (int w : adj[v]) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      rec();
      path.pop_back();
      used[w] = 0;
    }
  };
  if (n >= 3) rec();
  return out;
}

int vertex_system_rank(int n, const std::vector<std::array<int, 2>>& edges) {
  int m = static_cast<int>(edges.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m, 0));
  for (int e = 0; e < m; ++e) {
    a[edges[e][0]][e] = 1;
    a[edges[e][1]][e] = 1;
  }
  int rank = 0;
  for (int col = 0; col < m && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = 0; r < n; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (int c = col; c < m; ++c) a[r][c] -= f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

int cone_dimension(const EquatorGraph& g) {
  return g.edge_count() - vertex_system_rank(g.n(), g.edges());
}

} // namespace quadric
