#include "doctest.h"

#include "support.h"

#include "quadric/ads.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace quadric;
using namespace quadric::testing;

namespace {

double edge_value(const MarkedTriangulation& tri, const std::vector<double>& v, int a, int b, Side side) {
  return v[tri.find_edge(a, b, side)];
}

// Polyhedron with the free coordinates of both projections moved by h * d
// (first N-3 entries for x, the rest for y).
AdSPolyhedron moved(const AdSPolyhedron& P, const Eigen::VectorXd& d, double h) {
  auto x = P.left.coordinates(), y = P.right.coordinates();
  int k = P.size() - 3;
  for (int i = 0; i < k; ++i) {
    x[i + 3] += h * d[i];
    y[i + 3] += h * d[k + i];
  }
  return AdSPolyhedron::from_reals(x, y);
}

// Real cross ratio (a, b; c, d) of four finite or infinite reals.
double real_cross_ratio(double a, double b, double c, double d) {
  return cross_ratio(ProjPoint::from_real(a, -1), ProjPoint::from_real(b, -1), ProjPoint::from_real(c, -1),
                     ProjPoint::from_real(d, -1))
      .re;
}

std::vector<double> k4_angles(const EquatorGraph& g, double a, double b) {
  std::vector<double> theta(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [p, q] = g.edges()[e];
    if ((p == 0 && q == 1) || (p == 2 && q == 3)) theta[e] = -a;
    else if ((p == 1 && q == 2) || (p == 0 && q == 3)) theta[e] = -b;
    else theta[e] = a + b;
  }
  return theta;
}

double max_vertex_gap(const AdSPolyhedron& a, const AdSPolyhedron& b) {
  auto x = a.normalized().left.coordinates(), y = a.normalized().right.coordinates();
  auto u = b.normalized().left.coordinates(), v = b.normalized().right.coordinates();
  double m = 0.0;
  for (size_t i = 3; i < x.size(); ++i) m = std::max({m, std::abs(x[i] - u[i]), std::abs(y[i] - v[i])});
  return m;
}

} // namespace

TEST_CASE("tetrahedron fixture") {
  auto P = tetra_fixture();
  auto m = measure(P);
  const auto& g = m.graph;
  CHECK(g.edge_count() == 6);
  CHECK(g.edge_side(g.edge_index(1, 3)) == Side::Top);
  CHECK(g.edge_side(g.edge_index(0, 2)) == Side::Bottom);
  auto expected = tetra_angles(g);
  for (int e = 0; e < 6; ++e) CHECK(std::abs(m.theta[e] - expected[e]) < 1e-12);
  for (int v = 0; v < 4; ++v) {
    double sum = 0.0;
    for (int e : g.plane().vertex_edges()[v]) sum += m.theta[e];
    CHECK(std::abs(sum) < 1e-12);
  }
  const auto& tri = m.refinement.tri;
  CHECK(edge_value(tri, m.s, 0, 1, Side::Equator) == doctest::Approx(-0.5 * std::log(6.0)));
  CHECK(std::abs(edge_value(tri, m.s, 1, 3, Side::Top)) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(std::abs(edge_value(tri, m.s, 0, 3, Side::Equator)) == doctest::Approx(0.5 * std::log(3.0)));
  CHECK(m.earthquake_residual < 1e-12);
  CHECK(check_ads_conditions(g, m.theta).ok());
}

TEST_CASE("validation") {
  auto same = validate(AdSPolyhedron::from_reals({kInf, 0, 1, 2}, {kInf, 0, 1, 2}));
  CHECK(same.valid);
  CHECK(same.degenerate);
  auto fx = validate(tetra_fixture());
  CHECK(fx.valid);
  CHECK_FALSE(fx.degenerate);
  CHECK_FALSE(validate(AdSPolyhedron::from_reals({kInf, 0, 1, 2}, {kInf, 0, 2, 1})).valid);
  CHECK_THROWS_AS(ads_hull(AdSPolyhedron::from_reals({kInf, 0, 1, 2, 5}, {kInf, 0, 1, 2, 5})), Error);

  // Same as: every four vertices span an ideal tetrahedron, with matching orientations.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  int valid = 0;
  for (int t = 0; t < 2000; ++t) {
    int n = 4 + t % 3;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    // Mostly agreeing orders: sort both, then occasionally swap a pair.
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (t % 2) std::swap(y[rng() % n], y[rng() % n]);
    bool all = true;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            double zl = real_cross_ratio(x[a], x[b], x[c], x[d]), zr = real_cross_ratio(y[a], y[b], y[c], y[d]);
            if (!(zl * zr > 0 && (1 - zl) * (1 - zr) > 0)) all = false;
          }
    // Four-point cross ratios see cyclic orders only up to reversal; the
    // orientation of one triple settles it.
    auto orient = [](const std::vector<double>& z) { return (z[1] - z[0]) * (z[2] - z[1]) * (z[0] - z[2]) > 0; };
    all = all && orient(x) == orient(y);
    bool distinct = true;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) distinct = distinct && x[a] != x[b] && y[a] != y[b];
    if (!distinct) continue;
    auto r = validate(AdSPolyhedron::from_reals(x, y));
    CHECK(r.valid == all);
    valid += r.valid;
  }
  CHECK(valid > 500);
  CHECK(valid < 1900);
}

TEST_CASE("a small earthquake bends along one diagonal") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    auto x = IdealPolygon::from_reals(random_chart(rng, 5));
    std::array<int, 2> d = t % 2 ? std::array<int, 2>{1, 3} : std::array<int, 2>{0, 3};
    auto y = earthquake(x, {{d, 0.05}});
    AdSPolyhedron P{x, y};
    auto H = ads_hull(P);
    int e = H.graph.edge_index(d[0], d[1]);
    REQUIRE(e >= 0);
    CHECK(H.graph.edge_side(e) == Side::Top);
    int top = 0, bottom = 0;
    for (int f = 0; f < H.graph.edge_count(); ++f) {
      top += H.graph.edge_side(f) == Side::Top;
      bottom += H.graph.edge_side(f) == Side::Bottom;
    }
    CHECK(top == 1);
    CHECK(bottom == 2);
  }
}

TEST_CASE("measurements satisfy the earthquake relations and the cone conditions") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto P = random_ads(rng, 4 + t % 7);
    auto m = measure(P);
    CHECK(m.earthquake_residual < 1e-9);
    for (size_t e = 0; e < m.s.size(); ++e) {
      CHECK(std::abs(m.s_right[e] - m.s[e] - m.tri_theta[e]) < 1e-9);
      CHECK(std::abs(m.s[e] - m.s_left[e] - m.tri_theta[e]) < 1e-9);
    }
    CHECK(check_ads_conditions(m.graph, m.theta).ok());
  }
}

TEST_CASE("swapping the projections reverses the time orientation") {
  // Top and bottom trade places, every angle is kept with its sign (equator
  // angles stay negative) and the shears change sign, so s_L and s_R trade
  // places up to sign.
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    auto P = random_ads(rng, 4 + t % 6);
    auto a = measure(P), b = measure(P.swapped());
    for (int e = 0; e < a.graph.edge_count(); ++e) {
      auto [p, q] = a.graph.edges()[e];
      int f = b.graph.edge_index(p, q);
      REQUIRE(f >= 0);
      Side sa = a.graph.edge_side(e), sb = b.graph.edge_side(f);
      CHECK(sb == (sa == Side::Top ? Side::Bottom : sa == Side::Bottom ? Side::Top : Side::Equator));
      CHECK(b.theta[f] == doctest::Approx(a.theta[e]).epsilon(1e-10));
    }
    const auto& ta = a.refinement.tri;
    const auto& tb = b.refinement.tri;
    for (int e = 0; e < ta.edge_count(); ++e) {
      const auto& te = ta.edges[e];
      Side mirrored = te.side == Side::Top ? Side::Bottom : te.side == Side::Bottom ? Side::Top : Side::Equator;
      int f = tb.find_edge(te.a, te.b, mirrored);
      if (f < 0) continue; // added diagonals of non-triangular faces may differ
      CHECK(tb.edges[f].side == mirrored);
      CHECK(b.s_left[f] == doctest::Approx(-a.s_right[e]).epsilon(1e-10));
      CHECK(b.s_right[f] == doctest::Approx(-a.s_left[e]).epsilon(1e-10));
    }
    auto la = laminations_from_pair(P.left, P.right), lb = laminations_from_pair(P.right, P.left);
    REQUIRE(la.top.size() == lb.bottom.size());
    REQUIRE(la.bottom.size() == lb.top.size());
    for (size_t i = 0; i < la.top.size(); ++i) {
      CHECK(la.top[i].diagonal == lb.bottom[i].diagonal);
      CHECK(la.top[i].weight == doctest::Approx(lb.bottom[i].weight).epsilon(1e-10));
    }
  }
}

TEST_CASE("laminations between the projections") {
  auto P = tetra_fixture();
  auto L = laminations_from_pair(P.left, P.right);
  REQUIRE(L.top.size() == 1u);
  CHECK(L.top[0].diagonal == std::array<int, 2>{1, 3});
  CHECK(L.top[0].weight == doctest::Approx(std::log(2.0)));
  REQUIRE(L.bottom.size() == 1u);
  CHECK(L.bottom[0].diagonal == std::array<int, 2>{0, 2});
  auto r = earthquake(P.left, L.top).coordinates();
  CHECK(r[3] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(L.residual < 1e-12);

  auto same = laminations_from_pair(P.left, P.left);
  CHECK(same.degenerate);
  CHECK(same.top.empty());
  CHECK(same.bottom.empty());

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto Q = random_ads(rng, 4 + t % 7);
    auto M = laminations_from_pair(Q.left, Q.right);
    CHECK(M.residual < 1e-8);
    for (const auto& w : M.top) CHECK(w.weight > 0);
    for (const auto& w : M.bottom) CHECK(w.weight > 0);
    CHECK(max_vertex_gap(AdSPolyhedron{earthquake(Q.left, M.top), Q.right}, AdSPolyhedron{Q.right, Q.right}) < 1e-8);
    CHECK(max_vertex_gap(AdSPolyhedron{earthquake(Q.right, M.bottom), Q.left}, AdSPolyhedron{Q.left, Q.left}) < 1e-8);
  }
}

TEST_CASE("realization of the tetrahedron angles") {
  auto g = k4_graph();
  auto R = ads_from_angles(g, tetra_angles(g));
  CHECK(R.report.residual < 1e-8);
  CHECK(R.report.t_reached == 1.0);
  CHECK(max_vertex_gap(R.polyhedron, tetra_fixture()) < 1e-8);

  // Scaling the angles moves along a path that collapses to the double of a polygon.
  double ratio[3];
  int k = 0;
  for (double c : {0.1, 0.5, 1.0}) {
    auto theta = tetra_angles(g);
    for (auto& x : theta) x *= c;
    auto S = ads_from_angles(g, theta);
    CHECK(sup_diff(measure(S.polyhedron, g).theta, theta) < 1e-8);
    auto x = S.polyhedron.left.coordinates(), y = S.polyhedron.right.coordinates();
    ratio[k++] = std::abs(y[3] - x[3]) / c;
  }
  CHECK(ratio[0] / ratio[2] > 0.2);
  CHECK(ratio[0] / ratio[2] < 5.0);
}

TEST_CASE("two angles at a vertex determine a tetrahedron") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    auto P = random_ads(rng, 4);
    auto m = measure(P);
    double a = -m.theta[m.graph.edge_index(0, 1)], b = -m.theta[m.graph.edge_index(0, 3)];
    auto theta = k4_angles(m.graph, a, b);
    CHECK(sup_diff(theta, m.theta) < 1e-10);
    auto R = ads_from_angles(m.graph, theta);
    CHECK(max_vertex_gap(R.polyhedron, P) < 1e-8 * std::max(1.0, sup_norm(P.right.coordinates()) / 1e3));
  }
}

TEST_CASE("continuation on random interior angles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> size(0.2, 1.5);
  for (int t = 0; t < 12; ++t) {
    int n = 4 + t % 3;
    auto g = random_marked_graph(rng, n);
    auto theta = random_interior_angles(rng, g, size(rng));
    auto R = ads_from_angles(g, theta);
    CHECK(R.report.residual < 1e-8);
    CHECK(ads_hull(R.polyhedron).graph.same_marking(g));
    CHECK(sup_diff(measure(R.polyhedron, g).theta, theta) < 1e-8);
  }
  auto g = k4_graph();
  auto bad = tetra_angles(g);
  for (auto& x : bad) x = -x;
  CHECK_THROWS_AS(ads_from_angles(g, bad), Error);
}

TEST_CASE("equal diagonal angles give equal laminations") {
  // Alternating changes of the equator angles keep every vertex sum and every
  // diagonal angle, hence both laminations, but move the polyhedron.
  auto g = k4_graph();
  auto A = ads_from_angles(g, k4_angles(g, 0.3, 0.4));
  auto B = ads_from_angles(g, k4_angles(g, 0.35, 0.35));
  CHECK(max_vertex_gap(A.polyhedron, B.polyhedron) > 1e-3);
  auto la = laminations_from_pair(A.polyhedron.left, A.polyhedron.right);
  auto lb = laminations_from_pair(B.polyhedron.left, B.polyhedron.right);
  REQUIRE(la.top.size() == lb.top.size());
  for (size_t i = 0; i < la.top.size(); ++i) CHECK(la.top[i].weight == doctest::Approx(lb.top[i].weight).epsilon(1e-8));
  for (size_t i = 0; i < la.bottom.size(); ++i)
    CHECK(la.bottom[i].weight == doctest::Approx(lb.bottom[i].weight).epsilon(1e-8));
}

TEST_CASE("angles are a local immersion of the polyhedra") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    int n = 4 + t % 5;
    auto P = random_ads(rng, n);
    auto g = ads_hull(P).graph;
    int k = 2 * (n - 3);
    Eigen::MatrixXd J(g.edge_count(), k);
    double h = 1e-6;
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(k);
      d[j] = 1.0;
      auto tp = measure(moved(P, d, h), g).theta, tm = measure(moved(P, d, -h), g).theta;
      for (int e = 0; e < g.edge_count(); ++e) J(e, j) = (tp[e] - tm[e]) / (2 * h);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    CHECK(svd.singularValues().minCoeff() > 1e-6);
  }
  auto fx = tetra_fixture();
  auto g = ads_hull(fx).graph;
  Eigen::MatrixXd J(6, 2);
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(2);
    d[j] = 1.0;
    auto tp = measure(moved(fx, d, 1e-6), g).theta, tm = measure(moved(fx, d, -1e-6), g).theta;
    for (int e = 0; e < 6; ++e) J(e, j) = (tp[e] - tm[e]) / 2e-6;
  }
  CHECK(Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues().minCoeff() > 1e-6);
}

TEST_CASE("the cross ratio map is pseudo-holomorphic") {
  // Along the paired direction (-dx, dy) the shear moves like the angle along
  // (dx, dy) and the angle like the shear.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    int n = 4 + t % 6;
    auto P = random_ads(rng, n);
    auto g = ads_hull(P).graph;
    int k = n - 3;
    auto r = random_vector(rng, 2 * k);
    Eigen::VectorXd V = Eigen::Map<Eigen::VectorXd>(r.data(), 2 * k), JV = V;
    JV.head(k) = -V.head(k);
    double h = 1e-6;
    auto d = [&](const Eigen::VectorXd& dir, bool shear) {
      auto a = measure(moved(P, dir, h), g), b = measure(moved(P, dir, -h), g);
      const auto& pa = shear ? a.s : a.tri_theta;
      const auto& pb = shear ? b.s : b.tri_theta;
      std::vector<double> out(pa.size());
      for (size_t e = 0; e < pa.size(); ++e) out[e] = (pa[e] - pb[e]) / (2 * h);
      return out;
    };
    auto ds_J = d(JV, true), dth_V = d(V, false), dth_J = d(JV, false), ds_V = d(V, true);
    auto m = measure(P, g);
    for (size_t e = 0; e < ds_J.size(); ++e) {
      if (m.refinement.tri_to_graph[e] < 0) continue; // added diagonals carry no angle
      CHECK(std::abs(ds_J[e] - dth_V[e]) < 1e-5 * std::max(1.0, std::abs(dth_V[e])));
      CHECK(std::abs(dth_J[e] - ds_V[e]) < 1e-5 * std::max(1.0, std::abs(ds_V[e])));
    }
  }
}

TEST_CASE("continuation close to the boundary of the cone") {
  // Equator angles (1,2) and (3,4) near zero force two vertices of each
  // projection to within about exp(-2a) of each other.
  auto g = k4_graph();
  auto angles = [&](double a) {
    std::vector<double> theta(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.edges()[e];
      if ((u == 0 && v == 1) || (u == 2 && v == 3)) theta[e] = -1e-3;
      else if ((u == 1 && v == 2) || (u == 0 && v == 3)) theta[e] = -a;
      else theta[e] = a + 1e-3;
    }
    return theta;
  };
  auto R = ads_from_angles(g, angles(5.0));
  CHECK(R.report.residual < 1e-8);
  CHECK(sup_diff(measure(R.polyhedron, g).theta, angles(5.0)) < 1e-8);
  try {
    ads_from_angles(g, angles(12.0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepCollapse);
  }
}
