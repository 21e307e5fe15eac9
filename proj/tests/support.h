#pragma once

// Shared fixtures and random generators for the test programs.

#include "quadric/ads.h"
#include "quadric/conditions.h"
#include "quadric/graph.h"
#include "quadric/hp.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace quadric::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// The tetrahedron with left projection (inf, 0, 1, 2) and right projection (inf, 0, 1, 3).
inline AdSPolyhedron tetra_fixture() { return AdSPolyhedron::from_reals({kInf, 0, 1, 2}, {kInf, 0, 1, 3}); }

inline EquatorGraph k4_graph() { return ads_hull(tetra_fixture()).graph; }

// Angles of the fixture: equator (0,1), (2,3) -> -ln(3/2)/2, (1,2), (0,3) ->
// -ln(4/3)/2, both diagonals ln(2)/2.
inline std::vector<double> tetra_angles(const EquatorGraph& g) {
  std::vector<double> theta(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edges()[e];
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) theta[e] = -0.5 * std::log(1.5);
    else if ((a == 1 && b == 2) || (a == 0 && b == 3)) theta[e] = -0.5 * std::log(4.0 / 3.0);
    else theta[e] = 0.5 * std::log(2.0);
  }
  return theta;
}

// Normalized polygon with exponentially distributed gaps after 0, 1.
inline std::vector<double> random_chart(std::mt19937_64& rng, int n, double mean_gap = 1.0) {
  std::exponential_distribution<double> gap(1.0 / mean_gap);
  std::vector<double> xs{kInf, 0.0, 1.0};
  for (int i = 3; i < n; ++i) xs.push_back(xs.back() + 0.05 + gap(rng));
  return xs;
}

inline AdSPolyhedron random_ads(std::mt19937_64& rng, int n) {
  return AdSPolyhedron::from_reals(random_chart(rng, n), random_chart(rng, n));
}

inline HPPolyhedron random_hp(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::vector<double> vel(n, 0.0);
  for (int i = 3; i < n; ++i) vel[i] = v(rng);
  return {IdealPolygon::from_reals(random_chart(rng, n)), vel};
}

inline std::vector<double> random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<double> out(n);
  for (auto& x : out) x = nd(rng);
  return out;
}

// A random marked graph: the hull of a random AdS polyhedron.
inline EquatorGraph random_marked_graph(std::mt19937_64& rng, int n) {
  for (;;) {
    try {
      return ads_hull(random_ads(rng, n)).graph;
    } catch (const Error&) {
    }
  }
}

// Random vector in the kernel of the vertex-sum equations of g.
inline std::vector<double> random_balanced(std::mt19937_64& rng, const EquatorGraph& g) {
  int m = g.edge_count();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.n(), m);
  for (int e = 0; e < m; ++e) {
    A(g.edges()[e][0], e) = 1.0;
    A(g.edges()[e][1], e) = 1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  Eigen::MatrixXd K = lu.kernel();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(K.cols());
  auto r = random_vector(rng, static_cast<int>(K.cols()));
  for (int k = 0; k < K.cols(); ++k) c[k] = r[k];
  Eigen::VectorXd w = K * c;
  return std::vector<double>(w.data(), w.data() + m);
}

// Interior point of the angle cone: the exact LP witness moved along a random
// balanced direction, shrunk until the conditions hold, then rescaled so the
// largest angle has the requested size.
inline std::vector<double> random_interior_angles(std::mt19937_64& rng, const EquatorGraph& g,
                                                  double max_angle = 1.0) {
  auto cert = feasibility(g, ConditionSystem::Ads);
  if (!cert.feasible) throw Error(ErrorKind::NotInCone, "graph has empty angle cone");
  std::vector<double> w(g.edge_count());
  double size = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    w[e] = cert.witness[e].get_d();
    size = std::max(size, std::abs(w[e]));
  }
  for (auto& x : w) x /= size;
  auto d = random_balanced(rng, g);
  double dsize = 0.0;
  for (double x : d) dsize = std::max(dsize, std::abs(x));
  std::vector<double> theta;
  for (double step = 1.0; step > 1e-6; step /= 2) {
    theta = w;
    for (int e = 0; e < g.edge_count(); ++e) theta[e] += step * d[e] / dsize;
    if (check_ads_conditions(g, theta).ok()) break;
    theta = w;
  }
  double top = 0.0;
  for (double x : theta) top = std::max(top, std::abs(x));
  for (auto& x : theta) x *= max_angle / top;
  return theta;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double sup_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

} // namespace quadric::testing

namespace quadric::testing {

// Random triangulation of the N-gon: a maximal set of non-crossing diagonals
// taken in random order.
inline std::vector<std::array<int, 2>> random_triangulation(std::mt19937_64& rng, int n) {
  std::vector<std::array<int, 2>> all, out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 2; b < n; ++b)
      if (!(a == 0 && b == n - 1)) all.push_back({a, b});
  std::shuffle(all.begin(), all.end(), rng);
  for (auto d : all) {
    bool ok = true;
    for (auto e : out) ok = ok && !diagonals_cross(d, e);
    if (ok) out.push_back(d);
  }
  return out;
}

inline MarkedTriangulation random_double(std::mt19937_64& rng, int n) {
  return MarkedTriangulation::from_diagonals(n, random_triangulation(rng, n), random_triangulation(rng, n));
}

inline std::vector<double> random_decoration(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> d(n);
  for (auto& x : d) x = std::exp(u(rng));
  return d;
}

// A diagonal beta of the polygon crossed by some diagonal of tri, or {-1, -1}.
inline std::array<int, 2> crossed_diagonal(const MarkedTriangulation& tri, int n) {
  for (int a = 0; a < n; ++a)
    for (int b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      for (const auto& e : tri.edges)
        if (e.side != Side::Equator && diagonals_cross({e.a, e.b}, {a, b})) return {a, b};
    }
  return {-1, -1};
}

// Predicted derivative of length_fn(theta, E_{t beta} p, tri) at t = 0:
// sum theta_e cos(phi_e) over the edges crossing beta, phi_e = pi minus the
// crossing angle, plus a cusp term. The earthquake scales the horocycles at the
// endpoints a < b of beta, which shifts the lengths of the edges joining them
// to the vertices strictly between a and b.
inline double earthquake_length_derivative(const IdealPolygon& p, const MarkedTriangulation& tri,
                                           const std::vector<double>& theta, std::array<int, 2> beta) {
  auto between = [&](int v) { return v > beta[0] && v < beta[1]; };
  double d = 0.0;
  for (int e = 0; e < tri.edge_count(); ++e) {
    const auto& te = tri.edges[e];
    if (te.side != Side::Equator && diagonals_cross({te.a, te.b}, beta))
      d += theta[e] * std::cos(M_PI - crossing_angle(p, {te.a, te.b}, beta));
    if (te.a == beta[0] && between(te.b)) d -= theta[e];
    if (te.b == beta[0] && between(te.a)) d -= theta[e];
    if (te.a == beta[1] && between(te.b)) d += theta[e];
    if (te.b == beta[1] && between(te.a)) d += theta[e];
  }
  return d;
}

} // namespace quadric::testing
