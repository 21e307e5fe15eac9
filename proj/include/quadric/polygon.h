#pragma once

// Ideal polygons in the hyperbolic plane, triangulations of the doubled
// polygon (an N-punctured sphere with the polygon boundary as equator), shear
// and decorated length coordinates, earthquakes and weighted length functions.
//
// Labels are 0-based in the API (the label set 1..N of the mathematical
// description becomes 0..N-1); file formats use 1-based labels.
//
// Orientation convention. A face of the double is positively oriented when it
// is traversed as the left-hand face of its darts in the sphere embedding. Top
// faces are the faces on the right of the equator darts i -> i+1, so a top
// triangle with labels l1 < l2 < l3 is positively oriented as (l1, l3, l2),
// and bottom triangles as (l1, l2, l3). For an edge (a, b) with positive face
// (a, b, c) and opposite face (b, a, d) the shear is log|(a, b; d, c)|, which
// is the same as (1/2) sum_j eps_ij ell_j.

#include "quadric/algebra.h"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace quadric {

struct IdealPolygon {
  std::vector<ProjPoint> vertices; // real points

  static IdealPolygon from_reals(const std::vector<double>& xs); // +inf allowed
  int size() const { return static_cast<int>(vertices.size()); }
  // Affine coordinates; infinity is returned as +inf.
  std::vector<double> coordinates() const;
  // Moves vertices 0, 1, 2 to infinity, 0, 1.
  IdealPolygon normalized() const;
  bool is_normalized(double eps = kDefaultTolerance) const;
  // Pairwise distinct and positively ordered around RP^1.
  bool is_valid() const;
};

enum class Side { Equator, Top, Bottom };

struct TriEdge {
  int a = 0, b = 0; // a < b
  Side side = Side::Equator;
};

struct MarkedTriangulation {
  int n = 0;
  std::vector<TriEdge> edges;
  std::vector<std::array<int, 3>> faces;      // positively oriented vertex triples
  std::vector<Side> face_side;
  std::vector<std::array<int, 3>> face_edges; // edges (f0 f1), (f1 f2), (f2 f0)
  // For edge e = (a, b): positive face (a, b, c), opposite face (b, a, d).
  struct Quad {
    int a, b, c, d;
  };
  std::vector<Quad> quads;

  // Builds the double from the diagonals of the top and bottom triangulations.
  // Edge order: equator edges (i, i+1) first, then top diagonals, then bottom
  // diagonals, each in the order given.
  static MarkedTriangulation from_diagonals(int n, const std::vector<std::array<int, 2>>& top,
                                            const std::vector<std::array<int, 2>>& bottom);
  // Both copies triangulated by the same diagonals.
  static MarkedTriangulation symmetric(int n, const std::vector<std::array<int, 2>>& diagonals);

  int edge_count() const { return static_cast<int>(edges.size()); }
  // Index of the edge {a, b} on the given side, or -1.
  int find_edge(int a, int b, Side side) const;
  std::vector<std::array<int, 2>> diagonals(Side side) const;
  // eps_ij: number of positive faces in which edge j follows edge i, minus the reverse.
  Eigen::MatrixXi epsilon() const;
};

// Diagonal systems of a convex N-gon.
bool diagonals_cross(std::array<int, 2> d1, std::array<int, 2> d2);
// Completes a set of pairwise disjoint diagonals to a triangulation (deterministic).
std::vector<std::array<int, 2>> complete_triangulation(int n,
                                                       const std::vector<std::array<int, 2>>& diags);
std::vector<std::array<int, 2>> fan_triangulation(int n, int apex = 0);

struct DecoratedLengths {
  std::vector<double> ell;
  std::vector<double> decoration;
};

// ell(a, b) = 2 log|det(a, b)| - log d_a - log d_b with representatives (x, 1)
// and (1, 0) for infinity; at infinity this is the horocycle at height 1/d.
DecoratedLengths lambda_lengths(const IdealPolygon& p, const std::vector<double>& decoration,
                                const MarkedTriangulation& tri);
std::vector<double> lengths_to_shears(const std::vector<double>& ell, const MarkedTriangulation& tri);

// Shears of the double computed from cross ratios, one per edge.
std::vector<double> double_shears(const IdealPolygon& p, const MarkedTriangulation& tri);

// Shear of the diagonal (i, j) of the quad with opposite vertices a, b.
double shear_of_diagonal(const IdealPolygon& p, int i, int j, int a, int b);
// Shear of diagonal (i, j) inside the triangulation of the polygon given by diags.
double shear_in_triangulation(const IdealPolygon& p, const std::vector<std::array<int, 2>>& diags,
                              std::array<int, 2> diagonal);

struct DiagonalWeight {
  std::array<int, 2> diagonal;
  double weight = 0.0;
};

// Polygon whose diagonals (a triangulation) carry the given shears; normalized.
IdealPolygon polygon_from_shears(int n, const std::vector<DiagonalWeight>& shears);

// Shears every supported diagonal by its weight. Positive weights are left
// earthquakes; the result is normalized.
IdealPolygon earthquake(const IdealPolygon& p, const std::vector<DiagonalWeight>& lamination);

// Polygon velocities. Only the coordinates of vertices 3..N-1 of a normalized
// polygon move; the returned vector has N entries with the first three zero.
struct ShearField {
  std::vector<double> velocity;
  double normal_residual = 0.0; // sup-norm of the part of w not realized by a polygon motion
};

// Jacobian of the double shears with respect to x_3, ..., x_{N-1}.
Eigen::MatrixXd shear_jacobian(const IdealPolygon& p, const MarkedTriangulation& tri);
// Least-squares polygon motion whose double shears change at rate w.
ShearField infinitesimal_shear_field(const IdealPolygon& p, const MarkedTriangulation& tri,
                                     const std::vector<double>& w, double tol = kDefaultTolerance);
// Infinitesimal earthquake of the polygon along a lamination.
std::vector<double> infinitesimal_earthquake(const IdealPolygon& p,
                                             const std::vector<DiagonalWeight>& lamination);

// Weighted length sum_e theta_e ell_e of the double (decoration independent
// for balanced theta) and its gradient with respect to x_3, ..., x_{N-1}.
double length_fn(const std::vector<double>& theta, const IdealPolygon& p,
                 const MarkedTriangulation& tri, const std::vector<double>& decoration = {},
                 double tol = kDefaultTolerance);
Eigen::VectorXd length_fn_grad(const std::vector<double>& theta, const IdealPolygon& p,
                               const MarkedTriangulation& tri);
// d ell_e / d x_k for the same coordinates.
Eigen::MatrixXd length_jacobian(const IdealPolygon& p, const MarkedTriangulation& tri);

void require_balanced(const std::vector<double>& w, const MarkedTriangulation& tri,
                      double tol = kDefaultTolerance);
double max_vertex_imbalance(const std::vector<double>& w, const MarkedTriangulation& tri);

// omega(X, Y) = 1/2 sum eps_ij dl_i(X) dl_j(Y), and the same through shears.
double symplectic_form(const MarkedTriangulation& tri, const std::vector<double>& x,
                       const std::vector<double>& y);
double symplectic_form_via_shears(const MarkedTriangulation& tri, const std::vector<double>& x,
                                  const std::vector<double>& y);

// Angle in (0, pi) at which the geodesic alpha crosses beta: the
// counterclockwise rotation (upper half-plane orientation) taking the line
// alpha to the line beta.
double crossing_angle(const IdealPolygon& p, std::array<int, 2> alpha, std::array<int, 2> beta);

} // namespace quadric
