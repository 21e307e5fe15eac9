#include "quadric/ads.h"

#include "quadric/conditions.h"
#include "quadric/error.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace quadric {

namespace {

// Free coordinates of a normalized polygon: u_i = log(x_{i+3} - x_{i+2}), with x_2 = 1.
// Vertices that come close stay well resolved in these coordinates.
IdealPolygon polygon_from_gaps(const Eigen::VectorXd& u) {
  std::vector<double> xs{std::numeric_limits<double>::infinity(), 0.0, 1.0};
  for (int i = 0; i < u.size(); ++i) xs.push_back(xs.back() + std::exp(u[i]));
  return IdealPolygon::from_reals(xs);
}

bool finite(const Eigen::VectorXd& u) { return u.allFinite(); }

// |x_a - x_b| for finite vertices a, b >= 1 as a sum of positive gaps, so that
// close vertices keep full relative precision. gaps[k] = x_k - x_{k-1}, k >= 2.
std::vector<double> gap_list(const Eigen::VectorXd& u) {
  std::vector<double> g{0.0, 0.0, 1.0};
  for (int i = 0; i < u.size(); ++i) g.push_back(std::exp(u[i]));
  return g;
}

double gap_distance(const std::vector<double>& g, int a, int b) {
  if (a < b) std::swap(a, b);
  double d = 0.0;
  for (int k = b + 1; k <= a; ++k) d += g[k];
  return d;
}

// Double shears log|(a, b; d, c)| from the gaps; the two terms containing the
// vertex at infinity cancel.
Eigen::VectorXd gap_shears(const Eigen::VectorXd& u, const MarkedTriangulation& tri) {
  auto g = gap_list(u);
  Eigen::VectorXd s(tri.edge_count());
  auto term = [&](int x, int y) { return x == 0 || y == 0 ? 0.0 : std::log(gap_distance(g, x, y)); };
  for (int e = 0; e < tri.edge_count(); ++e) {
    const auto& q = tri.quads[e];
    s[e] = term(q.c, q.b) + term(q.d, q.a) - term(q.c, q.a) - term(q.d, q.b);
  }
  return s;
}

Eigen::MatrixXd gap_shear_jacobian(const Eigen::VectorXd& u, const MarkedTriangulation& tri) {
  auto g = gap_list(u);
  int m = static_cast<int>(u.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(tri.edge_count(), m);
  auto add = [&](int row, int x, int y, double sgn) {
    if (x == 0 || y == 0) return;
    if (x < y) std::swap(x, y);
    double d = gap_distance(g, x, y);
    for (int k = std::max(y + 1, 3); k <= x; ++k) J(row, k - 3) += sgn * g[k] / d;
  };
  for (int e = 0; e < tri.edge_count(); ++e) {
    const auto& q = tri.quads[e];
    add(e, q.c, q.b, 1.0);
    add(e, q.d, q.a, 1.0);
    add(e, q.c, q.a, -1.0);
    add(e, q.d, q.b, -1.0);
  }
  return J;
}

double sup_norm(const Eigen::VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

} // namespace

AdSPolyhedron AdSPolyhedron::from_reals(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidInput, "left and right projections differ in size");
  return {IdealPolygon::from_reals(x), IdealPolygon::from_reals(y)};
}

AdSPolyhedron AdSPolyhedron::normalized() const { return {left.normalized(), right.normalized()}; }

AdSValidation validate(const AdSPolyhedron& P) {
  AdSValidation out;
  if (P.left.size() != P.right.size() || P.left.size() < 3) return out;
  out.valid = P.left.is_valid() && P.right.is_valid();
  if (!out.valid) return out;
  auto xs = P.left.normalized().coordinates(), ys = P.right.normalized().coordinates();
  out.degenerate = true;
  for (size_t i = 3; i < xs.size(); ++i)
    if (std::abs(xs[i] - ys[i]) > 1e-12 * std::max(1.0, std::abs(xs[i]))) out.degenerate = false;
  return out;
}

std::vector<AffinePoint3> ads_embed(const AdSPolyhedron& P) {
  auto v = validate(P);
  if (!v.valid) throw Error(ErrorKind::InvalidInput, "the projections are not in the same cyclic order");
  AdSPolyhedron Q = P.normalized();
  int n = Q.size();
  // Angles a, b with x = tan a, y = tan b, lifted monotonically from -pi/2.
  auto angles = [n](const IdealPolygon& p) {
    auto xs = p.coordinates();
    std::vector<double> a(n);
    a[0] = -std::numbers::pi / 2;
    for (int i = 1; i < n; ++i) a[i] = std::atan(xs[i]);
    return a;
  };
  auto a = angles(Q.left), b = angles(Q.right);
  double dmin = 0.0, dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    dmin = std::min(dmin, a[i] - b[i]);
    dmax = std::max(dmax, a[i] - b[i]);
  }
  if (!(dmax - dmin < std::numbers::pi))
    throw Error(ErrorKind::NormalizationFailed, "no affine chart contains all vertices");
  // Rotating left and right in opposite directions centers a - b at zero.
  double delta = 0.5 * (dmax + dmin);
  std::vector<AffinePoint3> out;
  for (int i = 0; i < n; ++i) {
    double ai = a[i] - 0.5 * delta, bi = b[i] + 0.5 * delta;
    double w = std::cos(ai - bi);
    out.push_back({-std::cos(ai + bi) / w, std::sin(ai + bi) / w, std::sin(ai - bi) / w});
  }
  return out;
}

PolyhedronHull ads_hull(const AdSPolyhedron& P) {
  if (validate(P).degenerate) throw Error(ErrorKind::DegenerateHull, "the projections coincide (flat polyhedron)");
  std::vector<Eigen::Vector3d> pts;
  for (const auto& q : ads_embed(P)) pts.emplace_back(q.x1, q.x2, q.x3);
  // The timelike Killing field rotating the (x3, x4) plane, written in the
  // chart and oriented so that the earthquake from the left to the right
  // projection runs along the top.
  return marked_hull(pts, [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(-x[0] * x[2], -x[1] * x[2], -1.0 - x[2] * x[2]);
  });
}

AdSMeasurement measure(const AdSPolyhedron& P, const EquatorGraph& g) {
  if (g.n() != P.size()) throw Error(ErrorKind::InvalidInput, "graph and polyhedron sizes differ");
  AdSMeasurement m;
  m.graph = g;
  m.refinement = refine(g);
  const MarkedTriangulation& tri = m.refinement.tri;
  auto xs = P.left.coordinates(), ys = P.right.coordinates();
  std::vector<ProjPoint> z;
  for (int i = 0; i < P.size(); ++i) z.push_back(ProjPoint::from_lr(xs[i], ys[i]));
  int E = tri.edge_count();
  m.tri_theta.resize(E);
  m.s.resize(E);
  for (int e = 0; e < E; ++e) {
    const auto& q = tri.quads[e];
    ShapeDecomposition d = decompose_shape(cross_ratio(z[q.a], z[q.b], z[q.d], z[q.c]));
    m.tri_theta[e] = d.theta;
    m.s[e] = d.s;
  }
  m.s_left = double_shears(P.left, tri);
  m.s_right = double_shears(P.right, tri);
  for (int e = 0; e < E; ++e)
    m.earthquake_residual = std::max({m.earthquake_residual, std::abs(m.s_right[e] - m.s[e] - m.tri_theta[e]),
                                      std::abs(m.s[e] - m.s_left[e] - m.tri_theta[e])});
  m.theta.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) m.theta[e] = m.tri_theta[m.refinement.graph_to_tri[e]];
  return m;
}

AdSMeasurement measure(const AdSPolyhedron& P) { return measure(P, ads_hull(P).graph); }

LaminationPair laminations_from_pair(const IdealPolygon& left, const IdealPolygon& right) {
  LaminationPair out;
  AdSPolyhedron P{left, right};
  auto v = validate(P);
  if (!v.valid) throw Error(ErrorKind::InvalidInput, "the polygons are not in the same cyclic order");
  if (v.degenerate) {
    out.degenerate = true;
    return out;
  }
  AdSMeasurement m = measure(P);
  for (int e = 0; e < m.graph.edge_count(); ++e) {
    auto [a, b] = m.graph.edges()[e];
    Side side = m.graph.edge_side(e);
    if (side == Side::Top) out.top.push_back({{a, b}, 2.0 * m.theta[e]});
    if (side == Side::Bottom) out.bottom.push_back({{a, b}, 2.0 * m.theta[e]});
  }
  auto mismatch = [](const IdealPolygon& p, const IdealPolygon& q) {
    auto xs = p.coordinates(), ys = q.normalized().coordinates();
    double r = 0.0;
    for (size_t i = 3; i < xs.size(); ++i) r = std::max(r, std::abs(xs[i] - ys[i]) / std::max(1.0, std::abs(ys[i])));
    return r;
  };
  out.residual = std::max(mismatch(earthquake(left, out.top), right), mismatch(earthquake(right, out.bottom), left));
  return out;
}

AdSRealization ads_from_angles(const EquatorGraph& g, const std::vector<double>& theta,
                               const ContinuationOptions& opt) {
  if (static_cast<int>(theta.size()) != g.edge_count())
    throw Error(ErrorKind::InvalidInput, "one angle per edge is required");
  if (!check_ads_conditions(g, theta).ok())
    throw Error(ErrorKind::NotInCone, "the angles violate the sign, vertex or circuit conditions");
  HPRealization hp = hp_from_angles(g, theta, opt.hp);
  Refinement r = refine(g);
  const MarkedTriangulation& tri = r.tri;
  int n = g.n(), m = n - 3, E = tri.edge_count();
  Eigen::VectorXd target = Eigen::VectorXd::Zero(E);
  for (int e = 0; e < g.edge_count(); ++e) target[r.graph_to_tri[e]] = theta[e];

  // Unknowns: free coordinates of the left polygon, then of the right one.
  auto split = [m](const Eigen::VectorXd& X) {
    return std::pair{polygon_from_gaps(X.head(m)), polygon_from_gaps(X.tail(m))};
  };
  auto valid = [](const Eigen::VectorXd& X) { return finite(X); };
  auto angles = [&](const Eigen::VectorXd& X) -> Eigen::VectorXd {
    return 0.5 * (gap_shears(X.tail(m), tri) - gap_shears(X.head(m), tri));
  };
  auto jacobian = [&](const Eigen::VectorXd& X) {
    Eigen::MatrixXd J(E, 2 * m);
    J.leftCols(m) = -0.5 * gap_shear_jacobian(X.head(m), tri);
    J.rightCols(m) = 0.5 * gap_shear_jacobian(X.tail(m), tri);
    return J;
  };
  // Gauss-Newton on theta(X) = t * target; returns iterations used or -1.
  auto correct = [&](Eigen::VectorXd& X, double t, double& res) {
    Eigen::VectorXd F = angles(X) - t * target;
    res = sup_norm(F);
    for (int it = 0; it < opt.max_corrector_iterations; ++it) {
      if (res < opt.tolerance) return it;
      Eigen::VectorXd dx = jacobian(X).colPivHouseholderQr().solve(-F);
      double alpha = 1.0;
      Eigen::VectorXd Xn;
      double rn = res;
      for (int k = 0; k < 8; ++k, alpha *= 0.5) {
        Xn = X + alpha * dx;
        if (!valid(Xn)) continue;
        Eigen::VectorXd Fn = angles(Xn) - t * target;
        rn = sup_norm(Fn);
        if (rn < res) {
          F = Fn;
          break;
        }
      }
      if (!(rn < res)) return -1;
      X = Xn;
      res = rn;
    }
    return res < opt.tolerance ? opt.max_corrector_iterations : -1;
  };
  auto check_hull = [&](const Eigen::VectorXd& X, double t) {
    auto [pl, pr] = split(X);
    // The solution exists, but coordinates closer than a few ulps no longer
    // describe a convex polyhedron.
    for (const auto& p : {pl, pr}) {
      auto xs = p.coordinates();
      for (int k = 3; k < n; ++k)
        if (!(xs[k] - xs[k - 1] > 64 * std::numeric_limits<double>::epsilon() * std::abs(xs[k]))) {
          char msg[128];
          std::snprintf(msg, sizeof msg, "vertices %d and %d merge in double precision at t = %.6g", k, k + 1, t);
          throw Error(ErrorKind::StepCollapse, msg);
        }
    }
    PolyhedronHull h = ads_hull({pl, pr});
    if (!h.graph.refines(g)) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "hull combinatorics changed at t = %.6g", t);
      throw Error(ErrorKind::CombinatoricsChanged, msg);
    }
  };

  auto px = hp.polyhedron.polygon.coordinates();
  const auto& v = hp.polyhedron.velocity;
  double t = opt.t_start;
  Eigen::VectorXd X(2 * m);
  bool ordered = true;
  for (int i = 0; i < m; ++i) {
    double prev = i == 0 ? 1.0 : px[2 + i], dprev = i == 0 ? 0.0 : v[2 + i];
    double gl = px[3 + i] - prev - t * (v[3 + i] - dprev), gr = px[3 + i] - prev + t * (v[3 + i] - dprev);
    ordered = ordered && gl > 0 && gr > 0;
    X[i] = std::log(gl);
    X[m + i] = std::log(gr);
  }
  AdSRealization out;
  double res = 0.0;
  if (!ordered || correct(X, t, res) < 0)
    throw Error(ErrorKind::StepCollapse, "the corrector failed at the start of the continuation");
  check_hull(X, t);

  double h = opt.initial_step;
  while (t < 1.0) {
    if (h < opt.min_step) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "continuation step collapsed at t = %.6g", t);
      throw Error(ErrorKind::StepCollapse, msg);
    }
    double step = std::min(h, 1.0 - t);
    // Predictor along the tangent d theta / dX * X' = target.
    Eigen::VectorXd tangent = jacobian(X).colPivHouseholderQr().solve(target);
    Eigen::VectorXd Y = X + step * tangent;
    double tn = t + step >= 1.0 - 1e-15 ? 1.0 : t + step;
    int used = valid(Y) ? correct(Y, tn, res) : -1;
    if (used < 0) {
      h = 0.5 * step;
      ++out.report.rejected;
      continue;
    }
    check_hull(Y, tn);
    X = Y;
    t = tn;
    ++out.report.steps;
    if (used <= 3) h = 2.0 * step;
  }
  auto [pl, pr] = split(X);
  out.polyhedron = {pl, pr};
  out.report.t_reached = t;
  // Measured from the rounded coordinates, which is what callers will see.
  try {
    out.report.residual = sup_norm(Eigen::VectorXd::Map(theta.data(), g.edge_count()) -
                                   Eigen::VectorXd::Map(measure(out.polyhedron, g).theta.data(), g.edge_count()));
  } catch (const Error& e) {
    throw Error(ErrorKind::StepCollapse,
                std::string("reached t = 1 but the rounded vertices cannot be measured: ") + e.what());
  }
  return out;
}

} // namespace quadric
