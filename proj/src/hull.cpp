#include "quadric/hull.h"

#include "quadric/error.h"
#include "quadric/exact.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace quadric {

int orient3d_exact(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                   const Eigen::Vector3d& d) {
  Rational m[3][3];
  for (int k = 0; k < 3; ++k) {
    Rational ak = rational_from_double(a[k]);
    m[0][k] = rational_from_double(b[k]) - ak;
    m[1][k] = rational_from_double(c[k]) - ak;
    m[2][k] = rational_from_double(d[k]) - ak;
  }
  Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return sgn(det);
}

int Hull::edge_count() const {
  size_t total = 0;
  for (const auto& f : faces) total += f.vertices.size();
  return static_cast<int>(total / 2);
}

Hull convex_hull(const std::vector<Eigen::Vector3d>& p, double coplanar_tol) {
  int n = static_cast<int>(p.size());
  if (n < 4) throw Error(ErrorKind::DegenerateHull, "a polyhedron needs at least 4 points");
  std::set<std::vector<int>> seen;
  Hull hull;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Eigen::Vector3d e1 = p[j] - p[i], e2 = p[k] - p[i];
        Eigen::Vector3d nrm = e1.cross(e2);
        double scale = e1.norm() * e2.norm();
        if (nrm.norm() <= 1e-14 * scale) continue; // collinear triple
        std::vector<int> on_plane{i, j, k};
        int pos = 0, neg = 0;
        for (int l = 0; l < n && !(pos && neg); ++l) {
          if (l == i || l == j || l == k) continue;
          Eigen::Vector3d e3 = p[l] - p[i];
          double det = nrm.dot(e3);
          double rel = std::abs(det) / (scale * e3.norm());
          if (rel < coplanar_tol) {
            on_plane.push_back(l);
            continue;
          }
          int s = rel < 1e-6 ? orient3d_exact(p[i], p[j], p[k], p[l]) : (det > 0 ? 1 : -1);
          (s > 0 ? pos : neg)++;
        }
        if (pos && neg) continue;
        if (!pos && !neg) throw Error(ErrorKind::DegenerateHull, "all points are coplanar");
        std::sort(on_plane.begin(), on_plane.end());
        if (!seen.insert(on_plane).second) continue;
        HullFace f;
        f.normal = (pos ? -nrm : nrm).normalized();
        Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
        for (int v : on_plane) centroid += p[v];
        centroid /= static_cast<double>(on_plane.size());
        Eigen::Vector3d u = (p[on_plane[0]] - centroid).normalized();
        Eigen::Vector3d w = f.normal.cross(u);
        std::vector<std::pair<double, int>> ang;
        for (int v : on_plane) {
          Eigen::Vector3d d = p[v] - centroid;
          ang.push_back({std::atan2(d.dot(w), d.dot(u)), v});
        }
        std::sort(ang.begin(), ang.end());
        for (auto& a : ang) f.vertices.push_back(a.second);
        // Every listed point must be a strict corner of its face.
        int m = static_cast<int>(f.vertices.size());
        for (int a = 0; a < m; ++a) {
          const auto& x = p[f.vertices[(a + m - 1) % m]];
          const auto& y = p[f.vertices[a]];
          const auto& z = p[f.vertices[(a + 1) % m]];
          Eigen::Vector3d c = (y - x).cross(z - y);
          if (c.dot(f.normal) <= coplanar_tol * (y - x).norm() * (z - y).norm())
            throw Error(ErrorKind::DegenerateHull, "a point lies on a face or an edge of the hull");
        }
        hull.faces.push_back(std::move(f));
      }
  std::vector<char> used(n, 0);
  for (const auto& f : hull.faces)
    for (int v : f.vertices) used[v] = 1;
  if (std::count(used.begin(), used.end(), 0))
    throw Error(ErrorKind::DegenerateHull, "a point is not a vertex of the hull");
  if (n - hull.edge_count() + static_cast<int>(hull.faces.size()) != 2)
    throw Error(ErrorKind::DegenerateHull, "hull faces do not form a sphere (near-coplanar points)");
  return hull;
}

} // namespace quadric
