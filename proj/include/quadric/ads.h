#pragma once

// Ideal polyhedra in anti-de Sitter space, given by their left and right
// projections: two ideal polygons with the same labels. Hull combinatorics,
// measurement of shears and dihedral angles, the earthquake laminations
// between the projections, and realization of prescribed angles by
// continuation from the half-pipe limit.
//
// Sign conventions. For an edge with left and right cross ratios x and y the
// dihedral angle is theta = (1/2) log(y / x) and the shear s = (1/2) log(xy),
// so the shears of the two projections are s_L = s - theta and
// s_R = s + theta. Equator angles come out negative. The right polygon is
// the left earthquake of the left one along twice the top angles, and the
// left polygon is the earthquake of the right one along twice the bottom
// angles.

#include "quadric/graph.h"
#include "quadric/hp.h"
#include "quadric/polygon.h"

#include <vector>

namespace quadric {

struct AdSPolyhedron {
  IdealPolygon left;  // x_i
  IdealPolygon right; // y_i

  static AdSPolyhedron from_reals(const std::vector<double>& x, const std::vector<double>& y);
  int size() const { return left.size(); }
  // Both projections normalized: vertices 0, 1, 2 at (inf, inf), (0, 0), (1, 1).
  AdSPolyhedron normalized() const;
  AdSPolyhedron swapped() const { return {right, left}; }
};

struct AdSValidation {
  bool valid = false;      // distinct points, same cyclic order in both projections
  bool degenerate = false; // the projections agree up to a Moebius map (flat)
};
AdSValidation validate(const AdSPolyhedron& P);

// Points on the hyperboloid x1^2 + x2^2 - x3^2 = 1 in an affine chart that
// contains all vertices.
std::vector<AffinePoint3> ads_embed(const AdSPolyhedron& P);
PolyhedronHull ads_hull(const AdSPolyhedron& P);

struct AdSMeasurement {
  EquatorGraph graph;
  std::vector<double> theta;        // per graph edge
  Refinement refinement;            // triangulation of the double refining the graph
  std::vector<double> tri_theta;    // per triangulation edge (zero on added diagonals)
  std::vector<double> s, s_left, s_right; // per triangulation edge
  // Sup norms of s_R - s - theta and s - s_L - theta, with s_L and s_R
  // computed from the projections alone.
  double earthquake_residual = 0.0;
};
// Measures on g, or on the hull of P when g is omitted.
AdSMeasurement measure(const AdSPolyhedron& P, const EquatorGraph& g);
AdSMeasurement measure(const AdSPolyhedron& P);

struct LaminationPair {
  std::vector<DiagonalWeight> top;    // p_R = E(top) p_L
  std::vector<DiagonalWeight> bottom; // p_L = E(bottom) p_R
  bool degenerate = false;            // projections coincide; both laminations empty
  double residual = 0.0;              // worst vertex mismatch when replaying both earthquakes
};
LaminationPair laminations_from_pair(const IdealPolygon& left, const IdealPolygon& right);

struct ContinuationOptions {
  double t_start = 1e-2;
  double initial_step = 0.1;
  double min_step = 1e-8;
  double tolerance = 1e-11;  // sup norm of the angle residual per corrector
  int max_corrector_iterations = 12;
  MinimizeOptions hp;
};

struct ContinuationReport {
  int steps = 0;
  int rejected = 0;
  double t_reached = 0.0;
  double residual = 0.0;   // final sup norm of measured minus prescribed angles
};

struct AdSRealization {
  AdSPolyhedron polyhedron;
  ContinuationReport report;
};
AdSRealization ads_from_angles(const EquatorGraph& g, const std::vector<double>& theta,
                               const ContinuationOptions& options = {});

} // namespace quadric
