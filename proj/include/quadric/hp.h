#pragma once

// Half-pipe ideal polyhedra: an ideal polygon with an infinitesimal
// deformation. Construction from dihedral angles by minimizing the weighted
// length function, angle measurement, fiber action and HP^2 sections.
//
// Conventions. A polyhedron is stored normalized: polygon vertices 0, 1, 2 at
// infinity, 0, 1 and zero velocity there. Vertex i of the cylinder is
// x_i + sigma v_i; its infinitesimal dihedral angles are the rates of change of
// the double's shears along v, so an infinitesimal earthquake of weight w on
// one diagonal gives that diagonal the angle w. The top copy bends by the top
// angles: v equals the infinitesimal earthquake along the top diagonals.

#include "quadric/algebra.h"
#include "quadric/graph.h"
#include "quadric/hull.h"
#include "quadric/polygon.h"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace quadric {

struct HPPolyhedron {
  IdealPolygon polygon;
  std::vector<double> velocity; // one per vertex; the first three are zero
};

// Subtracts the infinitesimal isometry matching the velocities of vertices 0,
// 1, 2. The polygon must be normalized; the velocity of vertex 0 is taken in
// the coordinate -1/x at infinity.
HPPolyhedron normalize_hp(const IdealPolygon& p, const std::vector<double>& velocity);

// Points on the cylinder x1^2 + x2^2 = 1.
std::vector<AffinePoint3> hp_embed(const HPPolyhedron& P);

struct PolyhedronHull {
  EquatorGraph graph;
  Hull hull;                       // faces of the embedded points
  std::vector<Side> face_side;     // per hull face
};
// Hull of points labelled in the cyclic order of the equator. A face is on
// the top when its outward normal pairs positively with the future time
// direction at its vertices; a face where the sign changes is not spacelike.
using TimeDirection = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;
PolyhedronHull marked_hull(const std::vector<Eigen::Vector3d>& points, const TimeDirection& future);
PolyhedronHull hp_hull(const HPPolyhedron& P);

struct HPAngleData {
  EquatorGraph graph;
  std::vector<double> theta;             // per graph edge
  std::vector<double> refinement_theta;  // per edge of the refining triangulation
};
HPAngleData hp_angles(const HPPolyhedron& P, const EquatorGraph& g);

struct MinimizeOptions {
  int starts = 10;             // seeded multistarts, the first from the regular chart point
  std::uint64_t seed = 1;
  int max_iterations = 500;
  double gradient_tol = 1e-9;  // sup norm in the log-gap coordinates
};

struct MinimizeResult {
  IdealPolygon polygon;
  double value = 0.0;
  double gradient_norm = 0.0;      // sup norm in the log-gap coordinates
  int iterations = 0;
  double multistart_spread = 0.0;  // largest coordinate difference between starts
  std::vector<double> history;     // objective along the accepted iterates of the first start
};

// Minimizer of the weighted length of the double over normalized polygons.
MinimizeResult minimize_length(const EquatorGraph& g, const std::vector<double>& theta,
                               const MinimizeOptions& options = {});

struct HPRealization {
  HPPolyhedron polyhedron;
  MinimizeResult minimization;
  double normal_residual = 0.0; // part of e_theta not tangent to the doubles
};
HPRealization hp_from_angles(const EquatorGraph& g, const std::vector<double>& theta,
                             const MinimizeOptions& options = {});

// Upper half-plane point z = u + i v as the matrix (1/v) [[u^2 + v^2, u], [u, 1]].
Eigen::Matrix2d hyperbolic_point_matrix(double u, double v);
// rot(a, X) from sqrt(X)^-1 a_skew sqrt(X) = rot [[0, -1/2], [1/2, 0]].
double fiber_action(const Eigen::Matrix2d& a, const Eigen::Matrix2d& X);
// The element with rot(a, X) = angle whose X-symmetric part vanishes.
Eigen::Matrix2d infinitesimal_rotation(const Eigen::Matrix2d& X, double angle);

// Section of a polyhedron by the vertical plane over the chord between two
// points of the unit circle (given by angles). Coordinates are the hyperbolic
// arclength r along the chord and the fiber length L = x3 / sqrt(1 - x1^2 - x2^2).
struct HPSection {
  std::vector<std::array<double, 2>> upper; // (r, L) from the left end to the right end
  std::vector<std::array<double, 2>> lower; // same endpoints as upper
};
HPSection hp_section(const HPPolyhedron& P, double angle_a, double angle_b);

struct HP2AreaAngles {
  double area = 0.0;
  // Left end, upper chain corners, right end, lower chain corners (right to left).
  std::vector<double> exterior_angles;
};
HP2AreaAngles hp2_area_and_angles(const HPSection& section);

} // namespace quadric
