#include "quadric/conditions.h"

#include "quadric/lp.h"

#include <algorithm>
#include <cmath>

namespace quadric {

namespace {

struct DoubleArith {
  double tol;
  static double zero() { return 0.0; }
  static double pi_times(int k) { return k * M_PI; }
  static int sign(double x) { return (x > 0) - (x < 0); }
  bool is_zero(double x) const { return std::abs(x) <= tol; }
  static double value(double x) { return x; }
};

struct ExactArith {
  static ExactAngle zero() { return {}; }
  static ExactAngle pi_times(int k) { return ExactAngle::multiple_of_pi(k); }
  static int sign(const ExactAngle& x) { return quadric::sign(x); }
  static bool is_zero(const ExactAngle& x) { return x == ExactAngle{}; }
  static double value(const ExactAngle& x) { return x.to_double(); }
};

template <class T, class Arith>
T sum_over(const std::vector<T>& theta, const std::vector<int>& edges) {
  T s = Arith::zero();
  for (int e : edges) s = s + theta[e];
  return s;
}

void require_size(size_t got, int want) {
  if (static_cast<int>(got) != want) throw Error(ErrorKind::InvalidInput, "one angle per edge is required");
}

template <class T, class Arith>
ConditionReport ads_check(const EquatorGraph& g, const std::vector<T>& theta, const Arith& ar,
                          std::uint64_t budget) {
  require_size(theta.size(), g.edge_count());
  ConditionReport rep;
  for (int e = 0; e < g.edge_count(); ++e) {
    int s = ar.sign(theta[e]);
    if (g.is_equator(e) && s >= 0) rep.violations.push_back({ViolationKind::EquatorSign, -1, {e}, ar.value(theta[e])});
    if (!g.is_equator(e) && s <= 0)
      rep.violations.push_back({ViolationKind::InteriorSign, -1, {e}, ar.value(theta[e])});
  }
  for (int v = 0; v < g.n(); ++v) {
    const auto& star = g.plane().vertex_edges()[v];
    T s = sum_over<T, Arith>(theta, star);
    if (!ar.is_zero(s)) rep.violations.push_back({ViolationKind::VertexSum, v, star, ar.value(s)});
  }
  CircuitOptions opt;
  opt.max_equator_edges = 2;
  opt.exact_equator_edges = 2;
  opt.budget = budget;
  auto circuits = dual_circuits(g.plane(), equator_mask(g), opt);
  rep.circuits_checked = circuits.size();
  for (const auto& c : circuits) {
    T s = sum_over<T, Arith>(theta, c);
    if (ar.sign(s) <= 0) rep.violations.push_back({ViolationKind::Circuit, -1, c, ar.value(s)});
  }
  return rep;
}

std::vector<std::vector<int>> rivin_circuits(const PlaneGraph& g, std::uint64_t budget) {
  CircuitOptions opt;
  opt.budget = budget;
  return dual_circuits(g, std::vector<bool>(g.edge_count(), false), opt);
}

template <class T, class Arith>
ConditionReport rivin_check(const PlaneGraph& g, const std::vector<T>& theta, const Arith& ar,
                            std::uint64_t budget) {
  require_size(theta.size(), g.edge_count());
  ConditionReport rep;
  for (int e = 0; e < g.edge_count(); ++e)
    if (ar.sign(theta[e]) <= 0 || ar.sign(ar.pi_times(1) - theta[e]) <= 0)
      rep.violations.push_back({ViolationKind::Range, -1, {e}, ar.value(theta[e])});
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& star = g.vertex_edges()[v];
    T s = sum_over<T, Arith>(theta, star) - ar.pi_times(2);
    if (!ar.is_zero(s)) rep.violations.push_back({ViolationKind::VertexSum, v, star, ar.value(s)});
  }
  auto circuits = rivin_circuits(g, budget);
  rep.circuits_checked = circuits.size();
  for (const auto& c : circuits) {
    T s = sum_over<T, Arith>(theta, c) - ar.pi_times(2);
    if (ar.sign(s) <= 0) rep.violations.push_back({ViolationKind::Circuit, -1, c, ar.value(s)});
  }
  return rep;
}

std::vector<Rational> unit_row(int n, int k) {
  std::vector<Rational> r(n, 0);
  r[k] = 1;
  return r;
}

// Variables x_e (e < E) and the slack eps (index E).
LinearProgram ads_program(const EquatorGraph& g, const std::vector<std::vector<int>>& cuts) {
  int m = g.edge_count();
  LinearProgram lp;
  lp.num_vars = m + 1;
  lp.objective = unit_row(m + 1, m);
  auto sgn = [&](int e) { return g.is_equator(e) ? Rational(-1) : Rational(1); };
  for (int e = 0; e < m; ++e) {
    auto row = unit_row(m + 1, e);
    row[m] = -1;
    lp.constraints.push_back({row, Relation::GreaterEqual, 0});
  }
  for (int v = 0; v < g.n(); ++v) {
    std::vector<Rational> row(m + 1, 0);
    for (int e : g.plane().vertex_edges()[v]) row[e] += sgn(e);
    lp.constraints.push_back({row, Relation::Equal, 0});
  }
  for (const auto& c : cuts) {
    std::vector<Rational> row(m + 1, 0);
    for (int e : c) row[e] += sgn(e);
    row[m] = -1;
    lp.constraints.push_back({row, Relation::GreaterEqual, 0});
  }
  std::vector<Rational> norm(m + 1, 1);
  norm[m] = 0;
  lp.constraints.push_back({norm, Relation::LessEqual, 1});
  return lp;
}

// Variables w_e = theta_e / pi (e < E) and the slack eps (index E).
LinearProgram rivin_program(const PlaneGraph& g, const std::vector<std::vector<int>>& cuts) {
  int m = g.edge_count();
  LinearProgram lp;
  lp.num_vars = m + 1;
  lp.objective = unit_row(m + 1, m);
  for (int e = 0; e < m; ++e) {
    auto lo = unit_row(m + 1, e);
    lo[m] = -1;
    lp.constraints.push_back({lo, Relation::GreaterEqual, 0});
    auto hi = unit_row(m + 1, e);
    hi[m] = 1;
    lp.constraints.push_back({hi, Relation::LessEqual, 1});
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<Rational> row(m + 1, 0);
    for (int e : g.vertex_edges()[v]) row[e] += 1;
    lp.constraints.push_back({row, Relation::Equal, 2});
  }
  for (const auto& c : cuts) {
    std::vector<Rational> row(m + 1, 0);
    for (int e : c) row[e] += 1;
    row[m] = -1;
    lp.constraints.push_back({row, Relation::GreaterEqual, 2});
  }
  return lp;
}

// Cutting-plane loop shared by both systems. `slack` returns the circuit
// constraint value at x (negative when violated).
template <class Build, class Slack>
FeasibilityCertificate cutting_planes(const std::vector<std::vector<int>>& circuits, Build build, Slack slack,
                                      int num_edges) {
  FeasibilityCertificate cert;
  std::vector<std::vector<int>> cuts;
  for (;;) {
    ++cert.lp_rounds;
    LpResult res = solve_lp(build(cuts));
    cert.cuts = cuts;
    if (res.status != LpStatus::Optimal || res.value <= 0) {
      cert.feasible = false;
      cert.margin = res.status == LpStatus::Optimal ? res.value : Rational(0);
      return cert;
    }
    size_t before = cuts.size();
    for (const auto& c : circuits)
      if (slack(c, res.x) < 0) cuts.push_back(c);
    if (cuts.size() == before) {
      cert.feasible = true;
      cert.margin = res.value;
      cert.witness.assign(res.x.begin(), res.x.begin() + num_edges);
      return cert;
    }
  }
}

} // namespace

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
  case ViolationKind::EquatorSign: return "equator_sign";
  case ViolationKind::InteriorSign: return "interior_sign";
  case ViolationKind::VertexSum: return "vertex_sum";
  case ViolationKind::Circuit: return "circuit";
  case ViolationKind::Range: return "range";
  }
  return "unknown";
}

ConditionReport check_ads_conditions(const EquatorGraph& g, const std::vector<double>& theta, double tol,
                                     std::uint64_t budget) {
  return ads_check(g, theta, DoubleArith{tol}, budget);
}

ConditionReport check_ads_conditions(const EquatorGraph& g, const std::vector<ExactAngle>& theta,
                                     std::uint64_t budget) {
  return ads_check(g, theta, ExactArith{}, budget);
}

ConditionReport check_rivin_conditions(const PlaneGraph& g, const std::vector<double>& theta, double tol,
                                       std::uint64_t budget) {
  return rivin_check(g, theta, DoubleArith{tol}, budget);
}

ConditionReport check_rivin_conditions(const PlaneGraph& g, const std::vector<ExactAngle>& theta,
                                       std::uint64_t budget) {
  return rivin_check(g, theta, ExactArith{}, budget);
}

std::vector<ExactAngle> exact_angles(const std::vector<double>& theta) {
  std::vector<ExactAngle> out;
  for (double x : theta) out.push_back(ExactAngle::from_double(x));
  return out;
}

std::vector<double> angle_values(const std::vector<ExactAngle>& theta) {
  std::vector<double> out;
  for (const auto& a : theta) out.push_back(a.to_double());
  return out;
}

RivinConversion ads_to_rivin(const EquatorGraph& g, const std::vector<ExactAngle>& theta,
                             std::uint64_t budget) {
  if (!check_ads_conditions(g, theta, budget).ok())
    throw Error(ErrorKind::NotInCone, "angles violate the cone conditions");
  // M bounds |theta| and the negative parts of all simple dual circuit sums;
  // any t with t M < pi satisfies both requirements.
  ExactAngle bound;
  for (const auto& a : theta) {
    ExactAngle abs_a = sign(a) < 0 ? -a : a;
    if (compare(abs_a, bound) > 0) bound = abs_a;
  }
  CircuitOptions opt;
  opt.skip_faces = false;
  opt.budget = budget;
  for (const auto& c : dual_circuits(g.plane(), equator_mask(g), opt)) {
    ExactAngle s;
    for (int e : c) s = s + theta[e];
    if (compare(-s, bound) > 0) bound = -s;
  }
  if (bound.pi_coeff != 0) throw Error(ErrorKind::InvalidInput, "cone angles must be real numbers, not multiples of pi");
  RivinConversion out;
  // pi_lower_bound() / M is admissible, so half of it is at most half the supremum.
  out.t = pi_lower_bound() / (2 * bound.offset);
  for (int e = 0; e < g.edge_count(); ++e) {
    ExactAngle v = out.t * theta[e];
    if (g.is_equator(e)) v = v + ExactAngle::multiple_of_pi(1);
    out.theta.push_back(v);
  }
  return out;
}

std::vector<ExactAngle> rivin_to_ads(const EquatorGraph& g, const std::vector<ExactAngle>& theta_prime,
                                     std::uint64_t budget) {
  if (!check_rivin_conditions(g.plane(), theta_prime, budget).ok())
    throw Error(ErrorKind::RivinViolated, "angles violate Rivin's conditions");
  std::vector<ExactAngle> out;
  for (int e = 0; e < g.edge_count(); ++e)
    out.push_back(g.is_equator(e) ? theta_prime[e] - ExactAngle::multiple_of_pi(1) : theta_prime[e]);
  return out;
}

FeasibilityCertificate feasibility(const EquatorGraph& g, ConditionSystem system, std::uint64_t budget) {
  if (system == ConditionSystem::Rivin) return rivin_feasibility(g.plane(), budget);
  CircuitOptions opt;
  opt.max_equator_edges = 2;
  opt.exact_equator_edges = 2;
  opt.budget = budget;
  auto circuits = dual_circuits(g.plane(), equator_mask(g), opt);
  int m = g.edge_count();
  auto slack = [&](const std::vector<int>& c, const std::vector<Rational>& x) {
    Rational s = -x[m];
    for (int e : c) s += g.is_equator(e) ? -x[e] : x[e];
    return s;
  };
  auto cert = cutting_planes(circuits, [&](const auto& cuts) { return ads_program(g, cuts); }, slack, m);
  cert.system = ConditionSystem::Ads;
  if (cert.feasible)
    for (int e = 0; e < m; ++e)
      if (g.is_equator(e)) cert.witness[e] = -cert.witness[e];
  return cert;
}

FeasibilityCertificate rivin_feasibility(const PlaneGraph& g, std::uint64_t budget) {
  auto circuits = rivin_circuits(g, budget);
  int m = g.edge_count();
  auto slack = [&](const std::vector<int>& c, const std::vector<Rational>& x) {
    Rational s = -x[m] - 2;
    for (int e : c) s += x[e];
    return s;
  };
  auto cert = cutting_planes(circuits, [&](const auto& cuts) { return rivin_program(g, cuts); }, slack, m);
  cert.system = ConditionSystem::Rivin;
  return cert;
}

bool replay(const EquatorGraph& g, const FeasibilityCertificate& cert, std::uint64_t budget) {
  if (cert.system == ConditionSystem::Rivin) return replay_rivin(g.plane(), cert, budget);
  if (cert.feasible) {
    if (static_cast<int>(cert.witness.size()) != g.edge_count() || cert.margin <= 0) return false;
    std::vector<ExactAngle> theta;
    for (const auto& w : cert.witness) theta.push_back({0, w});
    return check_ads_conditions(g, theta, budget).ok();
  }
  LpResult res = solve_lp(ads_program(g, cert.cuts));
  return res.status != LpStatus::Optimal || res.value <= 0;
}

bool replay_rivin(const PlaneGraph& g, const FeasibilityCertificate& cert, std::uint64_t budget) {
  if (cert.feasible) {
    if (static_cast<int>(cert.witness.size()) != g.edge_count() || cert.margin <= 0) return false;
    std::vector<ExactAngle> theta;
    for (const auto& w : cert.witness) theta.push_back(ExactAngle::multiple_of_pi(w));
    return check_rivin_conditions(g, theta, budget).ok();
  }
  LpResult res = solve_lp(rivin_program(g, cert.cuts));
  return res.status != LpStatus::Optimal || res.value <= 0;
}

} // namespace quadric
