#include "doctest.h"

#include "support.h"

#include "quadric/polygon.h"

#include <cmath>
#include <random>

using namespace quadric;
using namespace quadric::testing;

namespace {

// Polygon with the free coordinates moved by h * dx (dx indexed by vertex 3..N-1).
IdealPolygon moved(const IdealPolygon& p, const Eigen::VectorXd& dx, double h) {
  auto xs = p.coordinates();
  for (int k = 0; k < dx.size(); ++k) xs[k + 3] += h * dx[k];
  return IdealPolygon::from_reals(xs);
}

std::vector<double> coords(const IdealPolygon& p) { return p.normalized().coordinates(); }

double max_coord_diff(const IdealPolygon& a, const IdealPolygon& b) {
  auto x = coords(a), y = coords(b);
  double m = 0.0;
  for (size_t i = 3; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]) / std::max(1.0, std::abs(x[i])));
  return m;
}

std::vector<double> balanced_on(std::mt19937_64& rng, const MarkedTriangulation& tri) {
  // Shear variations of random polygon motions plus random null-space parts
  // are balanced; build one from the shear rows of epsilon instead.
  auto eps = tri.epsilon();
  auto r = random_vector(rng, tri.edge_count());
  std::vector<double> w(tri.edge_count(), 0.0);
  for (int i = 0; i < tri.edge_count(); ++i)
    for (int j = 0; j < tri.edge_count(); ++j) w[i] += 0.5 * eps(i, j) * r[j];
  return w;
}

} // namespace

TEST_CASE("triangulations of the double") {
  std::mt19937_64 rng(1);
  for (int n = 3; n <= 12; ++n) {
    auto tri = random_double(rng, n);
    CHECK(tri.edge_count() == 3 * n - 6);
    int equator = 0;
    for (const auto& e : tri.edges) equator += e.side == Side::Equator;
    CHECK(equator == n);
    CHECK(static_cast<int>(tri.faces.size()) == 2 * n - 4);
    auto eps = tri.epsilon();
    CHECK((eps + eps.transpose()).cwiseAbs().maxCoeff() == 0);
    CHECK(eps.cwiseAbs().maxCoeff() <= 1);
  }
  CHECK(fan_triangulation(6).size() == 3);
  CHECK(complete_triangulation(7, {{1, 4}}).size() == 4);
  CHECK(diagonals_cross({0, 2}, {1, 3}));
  CHECK_FALSE(diagonals_cross({0, 2}, {2, 4}));
  CHECK_FALSE(diagonals_cross({0, 3}, {1, 2}));
}

TEST_CASE("decorated lengths") {
  auto p = IdealPolygon::from_reals({kInf, 0, 1, 2});
  auto tri = MarkedTriangulation::symmetric(4, {{1, 3}});
  auto L = lambda_lengths(p, {1, 1, 1, 1}, tri);
  CHECK(L.ell[tri.find_edge(1, 2, Side::Equator)] == doctest::Approx(0.0));
  CHECK(L.ell[tri.find_edge(1, 3, Side::Top)] == doctest::Approx(2 * std::log(2.0)));
  // At infinity the horocycle is the line at height 1: the distance down to a
  // unit horocycle at a finite point is zero.
  CHECK(L.ell[tri.find_edge(0, 1, Side::Equator)] == doctest::Approx(0.0));

  std::vector<double> d{1, std::exp(1.0), 1, 1};
  auto M = lambda_lengths(p, d, tri);
  for (int e = 0; e < tri.edge_count(); ++e) {
    bool incident = tri.edges[e].a == 1 || tri.edges[e].b == 1;
    CHECK(M.ell[e] - L.ell[e] == doctest::Approx(incident ? -1.0 : 0.0));
  }
}

TEST_CASE("shears of single quads") {
  auto p = IdealPolygon::from_reals({kInf, 0, 1, 2});
  auto q = IdealPolygon::from_reals({kInf, 0, 1, 3});
  CHECK(shear_of_diagonal(p, 0, 2, 1, 3) == doctest::Approx(0.0));
  CHECK(shear_of_diagonal(q, 0, 2, 1, 3) == doctest::Approx(std::log(0.5)));
  auto sym = IdealPolygon::from_reals({kInf, -1, 0, 1});
  CHECK(shear_of_diagonal(sym, 0, 2, 1, 3) == doctest::Approx(0.0));
  CHECK(shear_in_triangulation(q, {{0, 2}}, {0, 2}) == doctest::Approx(std::log(0.5)));
  // Through the lengths.
  auto tri = MarkedTriangulation::symmetric(4, {{0, 2}});
  auto s = lengths_to_shears(lambda_lengths(p, {1, 1, 1, 1}, tri).ell, tri);
  CHECK(s[tri.find_edge(0, 2, Side::Top)] == doctest::Approx(0.0));
}

TEST_CASE("polygon from shears") {
  auto h = polygon_from_shears(4, {{{0, 2}, 0.0}});
  CHECK(coords(h)[3] == doctest::Approx(2.0));
  auto q = polygon_from_shears(4, {{{0, 2}, std::log(0.5)}});
  CHECK(coords(q)[3] == doctest::Approx(3.0));

  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    int n = 4 + t % 8;
    auto p = IdealPolygon::from_reals(random_chart(rng, n));
    auto diags = random_triangulation(rng, n);
    std::vector<DiagonalWeight> sh;
    for (auto d : diags) sh.push_back({d, shear_in_triangulation(p, diags, d)});
    auto r = polygon_from_shears(n, sh);
    worst = std::max(worst, max_coord_diff(p, r));
    for (const auto& w : sh) CHECK(shear_in_triangulation(r, diags, w.diagonal) == doctest::Approx(w.weight).epsilon(1e-9));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("shears through cross ratios equal the Penner combination of lengths") {
  std::mt19937_64 rng(3);
  double worst = 0.0, decoration_drift = 0.0;
  for (int t = 0; t < 300; ++t) {
    int n = 4 + t % 9;
    auto p = IdealPolygon::from_reals(random_chart(rng, n));
    auto tri = random_double(rng, n);
    auto s = double_shears(p, tri);
    auto a = lengths_to_shears(lambda_lengths(p, random_decoration(rng, n), tri).ell, tri);
    auto b = lengths_to_shears(lambda_lengths(p, random_decoration(rng, n), tri).ell, tri);
    worst = std::max(worst, sup_diff(s, a));
    decoration_drift = std::max(decoration_drift, sup_diff(a, b));
    CHECK(max_vertex_imbalance(s, tri) < 1e-10);
  }
  CHECK(worst < 1e-10);
  CHECK(decoration_drift < 1e-10);
}

TEST_CASE("symmetric doubles have antisymmetric shears") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    int n = 4 + t % 6;
    auto p = IdealPolygon::from_reals(random_chart(rng, n));
    auto diags = random_triangulation(rng, n);
    auto tri = MarkedTriangulation::symmetric(n, diags);
    auto s = double_shears(p, tri);
    for (int e = 0; e < tri.edge_count(); ++e) {
      const auto& te = tri.edges[e];
      if (te.side == Side::Equator) CHECK(std::abs(s[e]) < 1e-12);
      if (te.side == Side::Top) CHECK(s[e] + s[tri.find_edge(te.a, te.b, Side::Bottom)] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("earthquakes") {
  auto p = IdealPolygon::from_reals({kInf, 0, 1, 2});
  CHECK(max_coord_diff(earthquake(p, {{{0, 2}, 0.0}}), p) < 1e-15);
  auto q = earthquake(p, {{{1, 3}, std::log(2.0)}});
  CHECK(coords(q)[3] == doctest::Approx(3.0));
  CHECK(shear_in_triangulation(q, {{1, 3}}, {1, 3}) - shear_in_triangulation(p, {{1, 3}}, {1, 3}) ==
        doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(earthquake(p, {{{0, 2}, 1.0}, {{1, 3}, 1.0}}), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 200; ++t) {
    int n = 5 + t % 6;
    auto r = IdealPolygon::from_reals(random_chart(rng, n));
    auto diags = random_triangulation(rng, n);
    std::vector<DiagonalWeight> lam;
    for (auto d : diags)
      if (u(rng) > 0) lam.push_back({d, u(rng)});
    auto e = earthquake(r, lam);
    for (auto d : diags) {
      double shift = 0.0;
      for (const auto& l : lam)
        if (l.diagonal == d) shift = l.weight;
      CHECK(shear_in_triangulation(e, diags, d) - shear_in_triangulation(r, diags, d) ==
            doctest::Approx(shift).epsilon(1e-9));
    }
    // The infinitesimal earthquake is the derivative of the path.
    auto v = infinitesimal_earthquake(r, lam);
    double h = 1e-6;
    std::vector<DiagonalWeight> lp = lam, lm = lam;
    for (auto& l : lp) l.weight *= h;
    for (auto& l : lm) l.weight *= -h;
    auto xp = coords(earthquake(r, lp)), xm = coords(earthquake(r, lm));
    for (int i = 3; i < n; ++i) CHECK(std::abs((xp[i] - xm[i]) / (2 * h) - v[i]) < 1e-6 * std::max(1.0, std::abs(v[i])));
  }
}

TEST_CASE("infinitesimal shear fields") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    int n = 4 + t % 7;
    auto p = IdealPolygon::from_reals(random_chart(rng, n));
    auto tri = random_double(rng, n);
    auto zero = infinitesimal_shear_field(p, tri, std::vector<double>(tri.edge_count(), 0.0));
    CHECK(sup_norm(zero.velocity) == 0.0);

    // A shear variation produced by an actual motion is reproduced.
    Eigen::VectorXd V(n - 3);
    auto r = random_vector(rng, n - 3);
    for (int k = 0; k < n - 3; ++k) V[k] = r[k];
    Eigen::MatrixXd J = shear_jacobian(p, tri);
    Eigen::VectorXd w = J * V;
    auto field = infinitesimal_shear_field(p, tri, std::vector<double>(w.data(), w.data() + w.size()));
    CHECK(field.normal_residual < 1e-9);
    for (int k = 0; k < n - 3; ++k) CHECK(field.velocity[k + 3] == doctest::Approx(V[k]).epsilon(1e-7));

    // Finite differences of the double shears along the returned field
    // (fourth order stencil, step scaled to the smallest gap).
    auto xs = p.coordinates();
    double gap = 1.0;
    for (int i = 2; i < n; ++i) gap = std::min(gap, xs[i] - xs[i - 1]);
    double h = 1e-3 * gap / std::max(1.0, V.cwiseAbs().maxCoeff());
    auto s2p = double_shears(moved(p, V, 2 * h), tri), sp = double_shears(moved(p, V, h), tri);
    auto sm = double_shears(moved(p, V, -h), tri), s2m = double_shears(moved(p, V, -2 * h), tri);
    for (int e = 0; e < tri.edge_count(); ++e) {
      double fd = (-s2p[e] + 8 * sp[e] - 8 * sm[e] + s2m[e]) / (12 * h);
      CHECK(std::abs(fd - w[e]) < 1e-7 * std::max(1.0, std::abs(w[e])));
    }

    if (n >= 5) {
      // Generic balanced vectors are not tangent to the doubles.
      auto g = balanced_on(rng, tri);
      CHECK(max_vertex_imbalance(g, tri) < 1e-12);
      CHECK(infinitesimal_shear_field(p, tri, g).normal_residual > 1e-6);
    }
  }
  auto p = IdealPolygon::from_reals({kInf, 0, 1, 2, 4});
  auto tri = MarkedTriangulation::symmetric(5, fan_triangulation(5));
  std::vector<double> bad(tri.edge_count(), 0.0);
  bad[0] = 1.0;
  CHECK_THROWS_AS(infinitesimal_shear_field(p, tri, bad), Error);
}

TEST_CASE("weighted length function") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    int n = 4 + t % 7;
    auto p = IdealPolygon::from_reals(random_chart(rng, n));
    auto tri = random_double(rng, n);
    auto theta = balanced_on(rng, tri);
    CHECK(length_fn(std::vector<double>(tri.edge_count(), 0.0), p, tri) == 0.0);
    double base = length_fn(theta, p, tri);
    CHECK(length_fn(theta, p, tri, random_decoration(rng, n)) == doctest::Approx(base).epsilon(1e-10));
    auto scaled = theta;
    for (auto& x : scaled) x *= 2.5;
    CHECK(length_fn(scaled, p, tri) == doctest::Approx(2.5 * base).epsilon(1e-12));

    auto grad = length_fn_grad(theta, p, tri);
    double h = 1e-5;
    for (int k = 0; k < n - 3; ++k) {
      Eigen::VectorXd ek = Eigen::VectorXd::Zero(n - 3);
      ek[k] = 1.0;
      double fd = (length_fn(theta, moved(p, ek, h), tri) - length_fn(theta, moved(p, ek, -h), tri)) / (2 * h);
      CHECK(std::abs(fd - grad[k]) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
    std::vector<double> unbalanced(tri.edge_count(), 0.0);
    unbalanced[0] = 1.0;
    CHECK_THROWS_AS(length_fn(unbalanced, p, tri), Error);
  }
  // The fixture angles on the tetrahedron double.
  auto tri = MarkedTriangulation::from_diagonals(4, {{0, 2}}, {{1, 3}});
  std::vector<double> theta(tri.edge_count());
  for (int e = 0; e < tri.edge_count(); ++e) {
    auto te = tri.edges[e];
    if (te.side != Side::Equator) theta[e] = 0.5 * std::log(2.0);
    else if ((te.a == 0 && te.b == 1) || (te.a == 2 && te.b == 3)) theta[e] = -0.5 * std::log(1.5);
    else theta[e] = -0.5 * std::log(4.0 / 3.0);
  }
  auto p = IdealPolygon::from_reals({kInf, 0, 1, 2});
  double v = length_fn(theta, p, tri);
  CHECK(std::isfinite(v));
  CHECK(length_fn(theta, p, tri, random_decoration(rng, 4)) == doctest::Approx(v).epsilon(1e-10));
}

TEST_CASE("symplectic form") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    int n = 4 + t % 7;
    auto p = IdealPolygon::from_reals(random_chart(rng, n));
    auto tri = random_double(rng, n);
    auto x = random_vector(rng, tri.edge_count()), y = random_vector(rng, tri.edge_count());
    CHECK(symplectic_form(tri, x, y) == doctest::Approx(-symplectic_form(tri, y, x)));
    CHECK(std::abs(symplectic_form(tri, x, x)) < 1e-12);
    CHECK(symplectic_form(tri, x, y) == doctest::Approx(symplectic_form_via_shears(tri, x, y)).epsilon(1e-10));

    // The doubles are isotropic.
    Eigen::MatrixXd L = length_jacobian(p, tri);
    auto a = random_vector(rng, n - 3), b = random_vector(rng, n - 3);
    Eigen::VectorXd va = Eigen::Map<Eigen::VectorXd>(a.data(), n - 3), vb = Eigen::Map<Eigen::VectorXd>(b.data(), n - 3);
    Eigen::VectorXd X = L * va, Y = L * vb;
    std::vector<double> xs(X.data(), X.data() + X.size()), ys(Y.data(), Y.data() + Y.size());
    CHECK(std::abs(symplectic_form(tri, xs, ys)) < 1e-9 * std::max(1.0, X.norm() * Y.norm()));

    // omega(e_theta, X) = -d ell_theta(X): e_theta as a length variation
    // whose shear variation is theta.
    auto theta = balanced_on(rng, tri);
    Eigen::MatrixXd half_eps = 0.5 * tri.epsilon().cast<double>();
    Eigen::VectorXd th = Eigen::Map<Eigen::VectorXd>(theta.data(), theta.size());
    Eigen::VectorXd e_theta = half_eps.completeOrthogonalDecomposition().solve(th);
    CHECK((half_eps * e_theta - th).cwiseAbs().maxCoeff() < 1e-9);
    std::vector<double> es(e_theta.data(), e_theta.data() + e_theta.size());
    double h = 1e-5;
    double fd = (length_fn(theta, moved(p, va, h), tri) - length_fn(theta, moved(p, va, -h), tri)) / (2 * h);
    CHECK(std::abs(symplectic_form(tri, es, xs) + fd) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("crossing angles") {
  // The diagonals of (inf, -1, 0, 1) ... use a square: the geodesics from
  // -1 to 1 and from 0 to infinity are orthogonal.
  auto p = IdealPolygon::from_reals({kInf, -1, 0, 1});
  CHECK(crossing_angle(p, {0, 2}, {1, 3}) == doctest::Approx(M_PI / 2));
  auto q = IdealPolygon::from_reals({kInf, 0, 1, 3});
  double phi = crossing_angle(q, {0, 2}, {1, 3});
  CHECK(phi > 0.0);
  CHECK(phi < M_PI);
  CHECK(crossing_angle(q, {1, 3}, {0, 2}) == doctest::Approx(M_PI - phi));
}

TEST_CASE("weighted length along earthquake paths") {
  // d/dt ell_theta matches the predicted derivative, the crossing angles move
  // monotonically, and ell_theta is strictly convex along the path.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    int n = 5 + t % 4;
    auto P = random_ads(rng, n);
    AdSMeasurement m;
    try {
      m = measure(P);
    } catch (const Error&) {
      continue;
    }
    const auto& tri = m.refinement.tri;
    auto p = P.left.normalized();
    auto beta = crossed_diagonal(tri, n);
    REQUIRE(beta[0] >= 0);
    auto ell = [&](double s) { return length_fn(m.tri_theta, earthquake(p, {{beta, s}}), tri); };
    double h = 1e-4;
    std::vector<std::vector<double>> angles;
    for (int k = 0; k <= 10; ++k) {
      double s = 0.1 * k;
      double d = (ell(s + h) - ell(s - h)) / (2 * h);
      auto ps = earthquake(p, {{beta, s}});
      CHECK(std::abs(d - earthquake_length_derivative(ps, tri, m.tri_theta, beta)) < 1e-6);
      std::vector<double> phis;
      for (const auto& te : tri.edges)
        if (te.side != Side::Equator && diagonals_cross({te.a, te.b}, beta))
          phis.push_back(crossing_angle(ps, {te.a, te.b}, beta));
      angles.push_back(phis);
      CHECK(ell(s + h) - 2 * ell(s) + ell(s - h) > 0.0);
    }
    for (size_t k = 1; k < angles.size(); ++k)
      for (size_t i = 0; i < angles[k].size(); ++i) CHECK(angles[k][i] > angles[k - 1][i]);
  }
}
