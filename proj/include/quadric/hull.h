#pragma once

// Convex hulls of small point sets in R^3 with exact orientation predicates.

#include <Eigen/Dense>

#include <vector>

namespace quadric {

// Sign of det[b - a, c - a, d - a], evaluated exactly in rational arithmetic.
int orient3d_exact(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                   const Eigen::Vector3d& d);

struct HullFace {
  std::vector<int> vertices; // counterclockwise seen from outside
  Eigen::Vector3d normal;    // outward unit normal
};

struct Hull {
  std::vector<HullFace> faces;
  int edge_count() const;
};

// Brute force over supporting planes. Points within the relative coplanarity
// tolerance of a supporting plane are merged into a polygonal face. Throws
// DegenerateHull when all points are coplanar or some point is not a vertex.
Hull convex_hull(const std::vector<Eigen::Vector3d>& points, double coplanar_tol = 1e-9);

} // namespace quadric
