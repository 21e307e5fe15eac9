#pragma once

// Embedded planar graphs (rotation systems), the equator marking, dual
// circuits, Hamiltonian cycles and the refinement of a marked graph to a
// triangulation of the doubled polygon.
//
// A rotation lists the neighbours of a vertex counterclockwise. Faces are the
// left-hand faces of darts: the dart following u -> v is v -> w where w
// precedes u in the rotation at v.

#include "quadric/error.h"
#include "quadric/polygon.h"

#include <array>
#include <cstdint>
#include <vector>

namespace quadric {

class PlaneGraph {
public:
  PlaneGraph() = default;

  // Validates simplicity, planarity (Euler count of the traced faces) and
  // 3-connectivity.
  static PlaneGraph from_rotation(int n, std::vector<std::vector<int>> rotation);
  // Embedding computed by a planarity test; unique up to mirror for 3-connected graphs.
  static PlaneGraph from_edges(int n, const std::vector<std::array<int, 2>>& edges);
  // Faces given as positively oriented vertex cycles.
  static PlaneGraph from_faces(int n, const std::vector<std::vector<int>>& faces);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const std::vector<std::array<int, 2>>& edges() const { return edges_; } // a < b, sorted
  const std::vector<std::vector<int>>& rotation() const { return rotation_; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  // Edge indices along each face; face_edges()[f][k] joins faces()[f][k] and the next vertex.
  const std::vector<std::vector<int>>& face_edges() const { return face_edges_; }
  // The faces on the two sides of each edge: left of a -> b, then left of b -> a.
  const std::vector<std::array<int, 2>>& edge_faces() const { return edge_faces_; }
  // Edges incident to each vertex, in rotation order.
  const std::vector<std::vector<int>>& vertex_edges() const { return vertex_edges_; }

  int edge_index(int a, int b) const;
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
  // Face to the left of the dart a -> b.
  int left_face(int a, int b) const;

  // Relabels vertex cycle[k] as k; the rotation is carried along.
  PlaneGraph relabeled(const std::vector<int>& cycle) const;
  PlaneGraph mirrored() const;

  // Canonical code of the embedded graph up to relabeling and mirroring.
  std::vector<int> canonical_code() const;

private:
  void build();

  int n_ = 0;
  std::vector<std::vector<int>> rotation_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<int>> face_edges_;
  std::vector<std::array<int, 2>> edge_faces_;
  std::vector<std::vector<int>> vertex_edges_;
};

bool is_three_connected(int n, const std::vector<std::array<int, 2>>& edges);

// A plane graph whose equator is the cycle 0, 1, ..., N-1. Top faces lie to
// the right of the equator darts i -> i+1, bottom faces to their left.
class EquatorGraph {
public:
  EquatorGraph() = default;
  explicit EquatorGraph(PlaneGraph g);

  const PlaneGraph& plane() const { return g_; }
  int n() const { return g_.vertex_count(); }
  int edge_count() const { return g_.edge_count(); }
  const std::vector<std::array<int, 2>>& edges() const { return g_.edges(); }
  int edge_index(int a, int b) const { return g_.edge_index(a, b); }

  bool is_equator(int e) const { return side_[e] == Side::Equator; }
  Side edge_side(int e) const { return side_[e]; }
  Side face_side(int f) const { return face_side_[f]; }

  // Same edges on the same sides.
  bool same_marking(const EquatorGraph& other) const;
  // Every edge of `coarse` is an edge here on the same side, and every other
  // edge here is a diagonal of a face of `coarse` on that face's side.
  bool refines(const EquatorGraph& coarse) const;

private:
  PlaneGraph g_;
  std::vector<Side> side_;
  std::vector<Side> face_side_;
};

// A triangulation of the double refining a marked graph: every non-triangular
// face is fanned from its smallest label.
struct Refinement {
  MarkedTriangulation tri;
  std::vector<int> graph_to_tri; // per graph edge
  std::vector<int> tri_to_graph; // per triangulation edge, -1 for added diagonals
};
Refinement refine(const EquatorGraph& g);
// Marked graph whose faces are the triangles of a triangulation of the double.
EquatorGraph graph_of_triangulation(const MarkedTriangulation& tri);

// Simple circuits of the dual graph as lists of primal edge indices.
struct CircuitOptions {
  int max_equator_edges = -1;     // prune circuits with more equator-dual edges (-1: no limit)
  int exact_equator_edges = -1;   // keep only circuits with this many (-1: any)
  bool skip_faces = true;         // drop circuits bounding a dual face (vertex stars)
  std::uint64_t budget = 10'000'000;
};
std::vector<std::vector<int>> dual_circuits(const PlaneGraph& g, const std::vector<bool>& equator,
                                            const CircuitOptions& options);
std::vector<bool> equator_mask(const EquatorGraph& g);

struct DualGraph {
  int vertex_count = 0;                   // faces of the primal
  std::vector<std::array<int, 2>> edges;  // dual edge e* joins the two faces of e
  std::vector<bool> equator;              // dual to an equator edge
  // Boundary cycles of the dual faces (one per primal vertex) as edge lists.
  std::vector<std::vector<int>> faces;
};
DualGraph dual_graph(const EquatorGraph& g);

// Hamiltonian cycles starting at vertex 0, each listed once up to reversal.
std::vector<std::vector<int>> hamiltonian_cycles(const PlaneGraph& g,
                                                 std::uint64_t node_budget = 100'000'000);

// Exact rank of the vertex-sum equations and |E| minus that rank.
int vertex_system_rank(int n, const std::vector<std::array<int, 2>>& edges);
int cone_dimension(const EquatorGraph& g);

} // namespace quadric
