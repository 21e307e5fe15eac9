#include "quadric/hp.h"

#include "quadric/conditions.h"
#include "quadric/error.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

namespace quadric {

namespace {

std::vector<Eigen::Vector3d> as_vectors(const std::vector<AffinePoint3>& pts) {
  std::vector<Eigen::Vector3d> out;
  for (const auto& q : pts) out.emplace_back(q.x1, q.x2, q.x3);
  return out;
}

// Finite coordinates of a normalized polygon from log gaps: x_2 = 1 and
// x_{k+1} = x_k + exp(u_k).
IdealPolygon polygon_from_gaps(const Eigen::VectorXd& u) {
  std::vector<double> xs{std::numeric_limits<double>::infinity(), 0.0, 1.0};
  for (int i = 0; i < u.size(); ++i) xs.push_back(xs.back() + std::exp(u[i]));
  return IdealPolygon::from_reals(xs);
}

// Weighted length 2 sum theta_e log|x_b - x_a| over edges between finite
// vertices, as a function of the log gaps, with gradient and Hessian.
struct LengthObjective {
  int n;
  std::vector<std::array<int, 2>> pairs;
  std::vector<double> weights;

  double value(const Eigen::VectorXd& u, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) const {
    int m = static_cast<int>(u.size());
    std::vector<double> x(n, 0.0);
    x[2] = 1.0;
    for (int i = 0; i < m; ++i) x[3 + i] = x[2 + i] + std::exp(u[i]);
    double f = 0.0;
    Eigen::VectorXd gx = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd hx = Eigen::MatrixXd::Zero(n, n);
    for (size_t e = 0; e < pairs.size(); ++e) {
      auto [a, b] = pairs[e];
      double d = x[b] - x[a];
      if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
      double w = 2.0 * weights[e];
      f += w * std::log(d);
      gx[b] += w / d;
      gx[a] -= w / d;
      double h = -w / (d * d);
      hx(a, a) += h;
      hx(b, b) += h;
      hx(a, b) -= h;
      hx(b, a) -= h;
    }
    if (grad || hess) {
      // dx_{3+k} / du_i = exp(u_i) for i <= k.
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
      for (int k = 0; k < m; ++k)
        for (int i = 0; i <= k; ++i) J(k, i) = std::exp(u[i]);
      Eigen::VectorXd g = gx.tail(m);
      Eigen::VectorXd gu = J.transpose() * g;
      if (grad) *grad = gu;
      if (hess) {
        *hess = J.transpose() * hx.bottomRightCorner(m, m) * J;
        hess->diagonal() += gu;
      }
    }
    return f;
  }
};

struct NewtonRun {
  Eigen::VectorXd u;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

NewtonRun newton(const LengthObjective& obj, Eigen::VectorXd u, const MinimizeOptions& opt) {
  NewtonRun run;
  Eigen::VectorXd g;
  Eigen::MatrixXd H;
  double f = obj.value(u, &g, &H);
  run.history.push_back(f);
  int m = static_cast<int>(u.size());
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < opt.gradient_tol) break;
    // Regularize until the Newton matrix is positive definite.
    double lambda = 0.0;
    Eigen::VectorXd step;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::LLT<Eigen::MatrixXd> llt(H + lambda * Eigen::MatrixXd::Identity(m, m));
      if (llt.info() == Eigen::Success) {
        step = -llt.solve(g);
        break;
      }
      lambda = lambda == 0.0 ? 1e-8 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff()) : lambda * 10.0;
    }
    if (step.size() == 0) step = -g;
    double slope = g.dot(step);
    if (!(slope < 0.0)) {
      step = -g;
      slope = -g.squaredNorm();
    }
    double alpha = 1.0, fn = 0.0;
    Eigen::VectorXd un;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls, alpha *= 0.5) {
      un = u + alpha * step;
      fn = obj.value(un, nullptr, nullptr);
      if (std::isfinite(fn) && fn <= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Near the minimum the objective stops resolving decrease; accept the
      // full Newton step when it still reduces the gradient.
      Eigen::VectorXd gn;
      un = u + step;
      fn = obj.value(un, &gn, nullptr);
      if (!std::isfinite(fn) || !(gn.lpNorm<Eigen::Infinity>() < g.lpNorm<Eigen::Infinity>())) break;
    }
    u = un;
    f = obj.value(u, &g, &H);
    run.history.push_back(f);
  }
  run.u = u;
  run.value = f;
  run.gradient_norm = g.lpNorm<Eigen::Infinity>();
  run.iterations = it;
  return run;
}

} // namespace

HPPolyhedron normalize_hp(const IdealPolygon& p, const std::vector<double>& velocity) {
  if (!p.is_normalized()) throw Error(ErrorKind::InvalidInput, "the polygon must be normalized");
  int n = p.size();
  if (static_cast<int>(velocity.size()) != n)
    throw Error(ErrorKind::InvalidInput, "one velocity per vertex is required");
  // Killing fields of RP^1 are a + b x + c x^2; in the chart -1/x at infinity
  // the field is c.
  double c = velocity[0], a = velocity[1], b = velocity[2] - a - c;
  auto xs = p.coordinates();
  HPPolyhedron P{p, std::vector<double>(n, 0.0)};
  for (int i = 3; i < n; ++i) P.velocity[i] = velocity[i] - (a + b * xs[i] + c * xs[i] * xs[i]);
  return P;
}

std::vector<AffinePoint3> hp_embed(const HPPolyhedron& P) {
  auto xs = P.polygon.coordinates();
  std::vector<AffinePoint3> out;
  for (int i = 0; i < P.polygon.size(); ++i) {
    double w = P.velocity[i];
    if (std::isinf(xs[i])) {
      out.push_back({1.0, 0.0, -2.0 * w});
      continue;
    }
    double x = xs[i], q = x * x + 1.0;
    out.push_back({(x * x - 1.0) / q, 2.0 * x / q, -2.0 * w / q});
  }
  return out;
}

PolyhedronHull marked_hull(const std::vector<Eigen::Vector3d>& points, const TimeDirection& future) {
  int n = static_cast<int>(points.size());
  PolyhedronHull out;
  out.hull = convex_hull(points);
  std::vector<std::vector<int>> faces;
  for (const auto& f : out.hull.faces) {
    int pos = 0, neg = 0;
    for (int v : f.vertices) {
      Eigen::Vector3d t = future(points[v]);
      double c = f.normal.dot(t) / t.norm();
      if (c > 1e-12) ++pos;
      else if (c < -1e-12) ++neg;
      else ++pos, ++neg;
    }
    if (pos && neg) throw Error(ErrorKind::DegenerateHull, "a hull face is not spacelike");
    Side side = pos ? Side::Top : Side::Bottom;
    out.face_side.push_back(side);
    std::vector<int> cyc = f.vertices;
    std::sort(cyc.begin(), cyc.end());
    if (side == Side::Top) std::reverse(cyc.begin(), cyc.end());
    faces.push_back(cyc);
  }
  out.graph = EquatorGraph(PlaneGraph::from_faces(n, faces));
  return out;
}

PolyhedronHull hp_hull(const HPPolyhedron& P) {
  // The fiber direction, oriented so that a positive infinitesimal earthquake
  // on a diagonal puts it on the top.
  return marked_hull(as_vectors(hp_embed(P)), [](const Eigen::Vector3d&) { return Eigen::Vector3d(0, 0, -1); });
}

HPAngleData hp_angles(const HPPolyhedron& P, const EquatorGraph& g) {
  if (g.n() != P.polygon.size()) throw Error(ErrorKind::InvalidInput, "graph and polyhedron sizes differ");
  Refinement r = refine(g);
  Eigen::MatrixXd J = shear_jacobian(P.polygon, r.tri);
  Eigen::VectorXd v(P.polygon.size() - 3);
  for (int i = 3; i < P.polygon.size(); ++i) v[i - 3] = P.velocity[i];
  Eigen::VectorXd th = J * v;
  HPAngleData out;
  out.graph = g;
  out.refinement_theta.assign(th.data(), th.data() + th.size());
  out.theta.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) out.theta[e] = th[r.graph_to_tri[e]];
  return out;
}

MinimizeResult minimize_length(const EquatorGraph& g, const std::vector<double>& theta,
                               const MinimizeOptions& options) {
  int n = g.n();
  if (n < 4) throw Error(ErrorKind::InvalidInput, "at least 4 vertices are required");
  if (static_cast<int>(theta.size()) != g.edge_count())
    throw Error(ErrorKind::InvalidInput, "one angle per edge is required");
  if (!check_ads_conditions(g, theta).ok())
    throw Error(ErrorKind::NotInCone, "the angles violate the sign, vertex or circuit conditions");
  Refinement r = refine(g);
  std::vector<double> tri_theta(r.tri.edge_count(), 0.0);
  for (int e = 0; e < g.edge_count(); ++e) tri_theta[r.graph_to_tri[e]] = theta[e];
  require_balanced(tri_theta, r.tri, 1e-9);

  LengthObjective obj{n, {}, {}};
  for (int e = 0; e < r.tri.edge_count(); ++e) {
    const auto& te = r.tri.edges[e];
    if (te.a == 0 || tri_theta[e] == 0.0) continue;
    obj.pairs.push_back({te.a, te.b});
    obj.weights.push_back(tri_theta[e]);
  }

  int m = n - 3;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<NewtonRun> runs;
  int starts = std::max(1, options.starts);
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(m);
    if (s > 0)
      for (int i = 0; i < m; ++i) u0[i] = 1.5 * normal(rng);
    runs.push_back(newton(obj, u0, options));
  }
  // Lowest value among converged starts, else the smallest gradient.
  auto converged = [&](const NewtonRun& run) { return run.gradient_norm < options.gradient_tol; };
  size_t best = 0;
  for (size_t s = 1; s < runs.size(); ++s) {
    bool cs = converged(runs[s]), cb = converged(runs[best]);
    if (cs != cb ? cs : (cs ? runs[s].value < runs[best].value : runs[s].gradient_norm < runs[best].gradient_norm))
      best = s;
  }
  const NewtonRun& b = runs[best];
  if (!(b.gradient_norm < options.gradient_tol)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "weighted length minimization stalled with gradient %.3e", b.gradient_norm);
    throw Error(ErrorKind::NoConvergence, msg);
  }

  MinimizeResult out;
  out.polygon = polygon_from_gaps(b.u);
  out.value = b.value;
  out.gradient_norm = b.gradient_norm;
  out.iterations = b.iterations;
  out.history = runs.front().history;
  auto xb = out.polygon.coordinates();
  for (const auto& run : runs) {
    if (!(run.gradient_norm < options.gradient_tol)) continue;
    auto xr = polygon_from_gaps(run.u).coordinates();
    for (int i = 3; i < n; ++i)
      out.multistart_spread =
          std::max(out.multistart_spread, std::abs(xr[i] - xb[i]) / std::max(1.0, std::abs(xb[i])));
  }
  return out;
}

HPRealization hp_from_angles(const EquatorGraph& g, const std::vector<double>& theta,
                             const MinimizeOptions& options) {
  HPRealization out;
  out.minimization = minimize_length(g, theta, options);
  Refinement r = refine(g);
  std::vector<double> tri_theta(r.tri.edge_count(), 0.0);
  for (int e = 0; e < g.edge_count(); ++e) tri_theta[r.graph_to_tri[e]] = theta[e];
  ShearField field = infinitesimal_shear_field(out.minimization.polygon, r.tri, tri_theta, 1e-9);
  out.normal_residual = field.normal_residual;
  double scale = 1.0;
  for (double t : theta) scale = std::max(scale, std::abs(t));
  if (!(field.normal_residual < 1e-8 * scale))
    throw Error(ErrorKind::NoConvergence, "the angle field is not tangent to the doubles at the minimizer");
  out.polyhedron = HPPolyhedron{out.minimization.polygon, field.velocity};
  PolyhedronHull h = hp_hull(out.polyhedron);
  if (!h.graph.refines(g))
    throw Error(ErrorKind::CombinatoricsMismatch, "the realized polyhedron does not have the requested faces");
  return out;
}

Eigen::Matrix2d hyperbolic_point_matrix(double u, double v) {
  if (!(v > 0.0)) throw Error(ErrorKind::InvalidInput, "the point must lie in the upper half plane");
  Eigen::Matrix2d X;
  X << u * u + v * v, u, u, 1.0;
  return X / v;
}

namespace {

Eigen::Matrix2d spd_sqrt(const Eigen::Matrix2d& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(X);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::InvalidInput, "the point matrix must be positive definite");
  return es.operatorSqrt();
}

} // namespace

double fiber_action(const Eigen::Matrix2d& a, const Eigen::Matrix2d& X) {
  Eigen::Matrix2d S = spd_sqrt(X);
  Eigen::Matrix2d skew = 0.5 * (a - X * a.transpose() * X.inverse());
  Eigen::Matrix2d M = S.inverse() * skew * S;
  return M(1, 0) - M(0, 1);
}

Eigen::Matrix2d infinitesimal_rotation(const Eigen::Matrix2d& X, double angle) {
  Eigen::Matrix2d S = spd_sqrt(X);
  Eigen::Matrix2d R;
  R << 0.0, -0.5, 0.5, 0.0;
  return angle * S * R * S.inverse();
}

HPSection hp_section(const HPPolyhedron& P, double angle_a, double angle_b) {
  Eigen::Vector2d A(std::cos(angle_a), std::sin(angle_a)), B(std::cos(angle_b), std::sin(angle_b));
  double h = 0.5 * (B - A).norm();
  if (h < 1e-12) throw Error(ErrorKind::InvalidInput, "the chord endpoints coincide");
  Eigen::Vector2d M = 0.5 * (A + B), dir = (B - A) / (2.0 * h), nrm(-dir[1], dir[0]);
  auto pts = as_vectors(hp_embed(P));
  Hull hull = convex_hull(pts);
  // Intersections of hull edges with the vertical plane over the chord.
  std::vector<std::array<double, 2>> cut;
  std::set<std::array<int, 2>> done;
  for (const auto& f : hull.faces) {
    int m = static_cast<int>(f.vertices.size());
    for (int k = 0; k < m; ++k) {
      int a = f.vertices[k], b = f.vertices[(k + 1) % m];
      if (!done.insert({std::min(a, b), std::max(a, b)}).second) continue;
      double fa = nrm.dot(pts[a].head<2>() - M), fb = nrm.dot(pts[b].head<2>() - M);
      if (!(fa * fb < 0.0)) continue;
      Eigen::Vector3d q = pts[a] + fa / (fa - fb) * (pts[b] - pts[a]);
      cut.push_back({dir.dot(q.head<2>() - M), q[2]});
    }
  }
  if (cut.size() < 2) throw Error(ErrorKind::InvalidInput, "the chord misses the polyhedron");
  // Monotone chain hull in the (s, x3) plane.
  std::sort(cut.begin(), cut.end());
  auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& p,
                  const std::array<double, 2>& q) {
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
  };
  auto chain = [&](int orient) {
    std::vector<std::array<double, 2>> c;
    for (const auto& q : cut) {
      while (c.size() >= 2 && orient * cross(c[c.size() - 2], c.back(), q) >= 0.0) c.pop_back();
      c.push_back(q);
    }
    return c;
  };
  auto to_rl = [&](std::vector<std::array<double, 2>> c) {
    for (auto& q : c) {
      double s = q[0];
      q = {std::atanh(s / h), q[1] / std::sqrt(h * h - s * s)};
    }
    return c;
  };
  HPSection out;
  out.upper = to_rl(chain(1));
  out.lower = to_rl(chain(-1));
  return out;
}

HP2AreaAngles hp2_area_and_angles(const HPSection& section) {
  // Along an edge of a section, L = alpha cosh r + beta sinh r.
  struct Piece {
    double alpha, beta, r0, r1;
    double slope(double r) const { return alpha * std::sinh(r) + beta * std::cosh(r); }
    double integral() const {
      return alpha * (std::sinh(r1) - std::sinh(r0)) + beta * (std::cosh(r1) - std::cosh(r0));
    }
  };
  auto pieces = [](const std::vector<std::array<double, 2>>& c) {
    if (c.size() < 2) throw Error(ErrorKind::InvalidInput, "a section chain needs two points");
    std::vector<Piece> out;
    for (size_t k = 0; k + 1 < c.size(); ++k) {
      double r0 = c[k][0], r1 = c[k + 1][0];
      double det = std::sinh(r1 - r0);
      if (std::abs(det) < 1e-14) throw Error(ErrorKind::DegenerateEdge, "a section edge has zero length");
      double alpha = (c[k][1] * std::sinh(r1) - c[k + 1][1] * std::sinh(r0)) / det;
      double beta = (c[k + 1][1] * std::cosh(r0) - c[k][1] * std::cosh(r1)) / det;
      out.push_back({alpha, beta, r0, r1});
    }
    return out;
  };
  auto top = pieces(section.upper), bottom = pieces(section.lower);
  HP2AreaAngles out;
  for (const auto& p : top) out.area += p.integral();
  for (const auto& p : bottom) out.area -= p.integral();
  double rl = top.front().r0, rr = top.back().r1;
  out.exterior_angles.push_back(bottom.front().slope(rl) - top.front().slope(rl));
  for (size_t k = 0; k + 1 < top.size(); ++k) {
    double r = top[k].r1;
    out.exterior_angles.push_back(top[k].slope(r) - top[k + 1].slope(r));
  }
  out.exterior_angles.push_back(top.back().slope(rr) - bottom.back().slope(rr));
  for (size_t k = bottom.size() - 1; k > 0; --k) {
    double r = bottom[k].r0;
    out.exterior_angles.push_back(bottom[k].slope(r) - bottom[k - 1].slope(r));
  }
  return out;
}

} // namespace quadric
