#include "quadric/polygon.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <set>

namespace quadric {

namespace {

constexpr int kReal = -1; // real points live in the complex algebra

// Canonical representative (x, 1), or (1, 0) at infinity.
std::array<double, 2> rep(const ProjPoint& p) {
  double x = p.real_value();
  if (std::isinf(x)) return {1.0, 0.0};
  return {x, 1.0};
}

double rdet(const std::array<double, 2>& p, const std::array<double, 2>& q) {
  return p[0] * q[1] - p[1] * q[0];
}

// (z1, z2; z3, z4) for real points, from determinants of representatives.
double real_cross_ratio(const std::array<double, 2>& z1, const std::array<double, 2>& z2,
                        const std::array<double, 2>& z3, const std::array<double, 2>& z4) {
  return rdet(z4, z2) * rdet(z3, z1) / (rdet(z4, z1) * rdet(z3, z2));
}

int orientation(const std::array<double, 2>& a, const std::array<double, 2>& b,
                const std::array<double, 2>& c) {
  double v = rdet(a, b) * rdet(b, c) * rdet(c, a);
  return (v > 0) - (v < 0);
}

bool is_side(int n, int a, int b) {
  int d = std::abs(a - b);
  return d == 1 || d == n - 1;
}

std::array<int, 2> sorted_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

void require_normalized(const IdealPolygon& p) {
  if (!p.is_normalized()) throw Error(ErrorKind::InvalidInput, "polygon must be normalized");
}

// Triangles of a triangulated n-gon, as sorted label triples.
std::vector<std::array<int, 3>> polygon_triangles(int n, const std::vector<std::array<int, 2>>& diags) {
  std::set<std::array<int, 2>> adj;
  for (int i = 0; i < n; ++i) adj.insert(sorted_pair(i, (i + 1) % n));
  for (auto d : diags) adj.insert(sorted_pair(d[0], d[1]));
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!adj.count({i, j})) continue;
      for (int k = j + 1; k < n; ++k)
        if (adj.count({i, k}) && adj.count({j, k})) tris.push_back({i, j, k});
    }
  return tris;
}

void validate_triangulation(int n, const std::vector<std::array<int, 2>>& diags) {
  if (n < 3) throw Error(ErrorKind::InvalidInput, "a polygon needs at least 3 vertices");
  if (static_cast<int>(diags.size()) != n - 3)
    throw Error(ErrorKind::InvalidInput, "a triangulation of an n-gon has n-3 diagonals");
  std::set<std::array<int, 2>> seen;
  for (auto d : diags) {
    auto s = sorted_pair(d[0], d[1]);
    if (s[0] < 0 || s[1] >= n || s[0] == s[1] || is_side(n, s[0], s[1]))
      throw Error(ErrorKind::InvalidInput, "not a diagonal");
    if (!seen.insert(s).second) throw Error(ErrorKind::InvalidInput, "repeated diagonal");
  }
  for (size_t i = 0; i < diags.size(); ++i)
    for (size_t j = i + 1; j < diags.size(); ++j)
      if (diagonals_cross(diags[i], diags[j]))
        throw Error(ErrorKind::OverlappingSupport, "crossing diagonals");
}

} // namespace

IdealPolygon IdealPolygon::from_reals(const std::vector<double>& xs) {
  IdealPolygon p;
  for (double x : xs) p.vertices.push_back(ProjPoint::from_real(x, kReal));
  return p;
}

std::vector<double> IdealPolygon::coordinates() const {
  std::vector<double> xs;
  for (const auto& v : vertices) xs.push_back(v.real_value());
  return xs;
}

IdealPolygon IdealPolygon::normalized() const {
  if (size() < 3) throw Error(ErrorKind::InvalidInput, "a polygon needs at least 3 vertices");
  Mobius m = mobius_to_standard(vertices[0], vertices[1], vertices[2]);
  IdealPolygon q;
  q.vertices.push_back(ProjPoint::infinity(kReal));
  q.vertices.push_back(ProjPoint::from_real(0.0, kReal));
  q.vertices.push_back(ProjPoint::from_real(1.0, kReal));
  for (int i = 3; i < size(); ++i) {
    ProjPoint w = m.apply(vertices[i]);
    double x = w.v.re == 0.0 ? std::numeric_limits<double>::infinity() : w.u.re / w.v.re;
    q.vertices.push_back(ProjPoint::from_real(x, kReal));
  }
  return q;
}

bool IdealPolygon::is_normalized(double eps) const {
  if (size() < 3) return false;
  auto xs = coordinates();
  return std::isinf(xs[0]) && std::abs(xs[1]) < eps && std::abs(xs[2] - 1.0) < eps;
}

bool IdealPolygon::is_valid() const {
  int n = size();
  if (n < 3) return false;
  for (const auto& v : vertices)
    if (!v.is_real()) return false;
  if (orientation(rep(vertices[0]), rep(vertices[1]), rep(vertices[2])) <= 0) return false;
  auto xs = normalized().coordinates();
  double prev = 1.0;
  for (int i = 3; i < n; ++i) {
    if (!std::isfinite(xs[i]) || !(xs[i] > prev)) return false;
    prev = xs[i];
  }
  return true;
}

bool diagonals_cross(std::array<int, 2> d1, std::array<int, 2> d2) {
  auto [i, j] = sorted_pair(d1[0], d1[1]);
  auto [k, l] = sorted_pair(d2[0], d2[1]);
  return (i < k && k < j && j < l) || (k < i && i < l && l < j);
}

std::vector<std::array<int, 2>> complete_triangulation(int n,
                                                       const std::vector<std::array<int, 2>>& diags) {
  std::vector<std::array<int, 2>> out;
  for (auto d : diags) out.push_back(sorted_pair(d[0], d[1]));
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (diagonals_cross(out[i], out[j]) || out[i] == out[j])
        throw Error(ErrorKind::OverlappingSupport, "diagonals are not pairwise disjoint");
  for (int len = 2; len <= n - 2; ++len)
    for (int i = 0; i + len < n; ++i) {
      std::array<int, 2> cand{i, i + len};
      if (is_side(n, cand[0], cand[1])) continue;
      if (std::find(out.begin(), out.end(), cand) != out.end()) continue;
      bool ok = std::none_of(out.begin(), out.end(),
                             [&](const std::array<int, 2>& d) { return diagonals_cross(d, cand); });
      if (ok) out.push_back(cand);
    }
  return out;
}

std::vector<std::array<int, 2>> fan_triangulation(int n, int apex) {
  std::vector<std::array<int, 2>> out;
  for (int j = 0; j < n; ++j)
    if (j != apex && !is_side(n, apex, j)) out.push_back(sorted_pair(apex, j));
  return out;
}

MarkedTriangulation MarkedTriangulation::from_diagonals(int n,
                                                        const std::vector<std::array<int, 2>>& top,
                                                        const std::vector<std::array<int, 2>>& bottom) {
  validate_triangulation(n, top);
  validate_triangulation(n, bottom);
  MarkedTriangulation t;
  t.n = n;
  for (int i = 0; i < n; ++i) {
    auto e = sorted_pair(i, (i + 1) % n);
    t.edges.push_back({e[0], e[1], Side::Equator});
  }
  for (auto d : top) t.edges.push_back({std::min(d[0], d[1]), std::max(d[0], d[1]), Side::Top});
  for (auto d : bottom)
    t.edges.push_back({std::min(d[0], d[1]), std::max(d[0], d[1]), Side::Bottom});

  for (auto tri : polygon_triangles(n, top)) {
    t.faces.push_back({tri[0], tri[2], tri[1]});
    t.face_side.push_back(Side::Top);
  }
  for (auto tri : polygon_triangles(n, bottom)) {
    t.faces.push_back({tri[0], tri[1], tri[2]});
    t.face_side.push_back(Side::Bottom);
  }
  auto resolve = [&](int a, int b, Side side) {
    if (is_side(n, a, b)) return t.find_edge(a, b, Side::Equator);
    return t.find_edge(a, b, side);
  };
  for (size_t f = 0; f < t.faces.size(); ++f) {
    auto v = t.faces[f];
    t.face_edges.push_back({resolve(v[0], v[1], t.face_side[f]), resolve(v[1], v[2], t.face_side[f]),
                            resolve(v[2], v[0], t.face_side[f])});
  }
  for (size_t e = 0; e < t.edges.size(); ++e) {
    Quad q{t.edges[e].a, t.edges[e].b, -1, -1};
    for (size_t f = 0; f < t.faces.size(); ++f) {
      for (int k = 0; k < 3; ++k) {
        if (t.face_edges[f][k] != static_cast<int>(e)) continue;
        int p0 = t.faces[f][k], p1 = t.faces[f][(k + 1) % 3], apex = t.faces[f][(k + 2) % 3];
        if (p0 == q.a && p1 == q.b) q.c = apex;
        else q.d = apex;
      }
    }
    if (q.c < 0 || q.d < 0) throw Error(ErrorKind::InvalidInput, "edge is not bounded by two faces");
    t.quads.push_back(q);
  }
  return t;
}

MarkedTriangulation MarkedTriangulation::symmetric(int n, const std::vector<std::array<int, 2>>& d) {
  return from_diagonals(n, d, d);
}

int MarkedTriangulation::find_edge(int a, int b, Side side) const {
  auto s = sorted_pair(a, b);
  for (size_t e = 0; e < edges.size(); ++e)
    if (edges[e].a == s[0] && edges[e].b == s[1] && edges[e].side == side) return static_cast<int>(e);
  return -1;
}

std::vector<std::array<int, 2>> MarkedTriangulation::diagonals(Side side) const {
  std::vector<std::array<int, 2>> out;
  for (const auto& e : edges)
    if (e.side == side) out.push_back({e.a, e.b});
  return out;
}

Eigen::MatrixXi MarkedTriangulation::epsilon() const {
  int m = edge_count();
  Eigen::MatrixXi eps = Eigen::MatrixXi::Zero(m, m);
  for (const auto& fe : face_edges)
    for (int k = 0; k < 3; ++k) {
      int i = fe[k], j = fe[(k + 1) % 3];
      eps(i, j) += 1;
      eps(j, i) -= 1;
    }
  return eps;
}

DecoratedLengths lambda_lengths(const IdealPolygon& p, const std::vector<double>& decoration,
                                const MarkedTriangulation& tri) {
  if (p.size() != tri.n) throw Error(ErrorKind::InvalidInput, "polygon and triangulation sizes differ");
  DecoratedLengths out;
  out.decoration = decoration.empty() ? std::vector<double>(tri.n, 1.0) : decoration;
  if (static_cast<int>(out.decoration.size()) != tri.n)
    throw Error(ErrorKind::InvalidInput, "one decoration per vertex");
  for (double d : out.decoration)
    if (!(d > 0)) throw Error(ErrorKind::InvalidInput, "decorations must be positive");
  for (const auto& e : tri.edges) {
    double dd = rdet(rep(p.vertices[e.a]), rep(p.vertices[e.b]));
    out.ell.push_back(2.0 * std::log(std::abs(dd)) - std::log(out.decoration[e.a]) -
                      std::log(out.decoration[e.b]));
  }
  return out;
}

std::vector<double> lengths_to_shears(const std::vector<double>& ell, const MarkedTriangulation& tri) {
  if (static_cast<int>(ell.size()) != tri.edge_count())
    throw Error(ErrorKind::InvalidInput, "one length per edge");
  std::vector<double> s(ell.size(), 0.0);
  for (const auto& fe : tri.face_edges)
    for (int k = 0; k < 3; ++k) {
      int i = fe[k], j = fe[(k + 1) % 3];
      s[i] += 0.5 * ell[j];
      s[j] -= 0.5 * ell[i];
    }
  return s;
}

std::vector<double> double_shears(const IdealPolygon& p, const MarkedTriangulation& tri) {
  std::vector<double> s;
  for (const auto& q : tri.quads) {
    double cr = real_cross_ratio(rep(p.vertices[q.a]), rep(p.vertices[q.b]), rep(p.vertices[q.d]),
                                 rep(p.vertices[q.c]));
    s.push_back(std::log(std::abs(cr)));
  }
  return s;
}

double shear_of_diagonal(const IdealPolygon& p, int i, int j, int a, int b) {
  if (i > j) std::swap(i, j);
  auto between = [&](int v) { return i < v && v < j; };
  if (between(a) == between(b)) throw Error(ErrorKind::DegenerateQuad, "a and b on the same side of (i, j)");
  int m = between(a) ? a : b;
  int o = between(a) ? b : a;
  double cr = real_cross_ratio(rep(p.vertices[i]), rep(p.vertices[j]), rep(p.vertices[o]),
                               rep(p.vertices[m]));
  if (!(cr < 0) || !std::isfinite(cr))
    throw Error(ErrorKind::DegenerateQuad, "quad vertices are not in convex position");
  return std::log(-cr);
}

double shear_in_triangulation(const IdealPolygon& p, const std::vector<std::array<int, 2>>& diags,
                              std::array<int, 2> diagonal) {
  auto d = sorted_pair(diagonal[0], diagonal[1]);
  std::vector<int> apex;
  for (auto t : polygon_triangles(p.size(), diags)) {
    int hit = 0, other = -1;
    for (int v : t) {
      if (v == d[0] || v == d[1]) ++hit;
      else other = v;
    }
    if (hit == 2) apex.push_back(other);
  }
  if (apex.size() != 2) throw Error(ErrorKind::InvalidInput, "diagonal is not in the triangulation");
  return shear_of_diagonal(p, d[0], d[1], apex[0], apex[1]);
}

IdealPolygon polygon_from_shears(int n, const std::vector<DiagonalWeight>& shears) {
  std::vector<std::array<int, 2>> diags;
  for (const auto& s : shears) diags.push_back(sorted_pair(s.diagonal[0], s.diagonal[1]));
  validate_triangulation(n, diags);
  auto tris = polygon_triangles(n, diags);
  auto shear_of = [&](int a, int b) {
    auto key = sorted_pair(a, b);
    for (size_t k = 0; k < diags.size(); ++k)
      if (diags[k] == key) return shears[k].weight;
    return std::numeric_limits<double>::quiet_NaN();
  };

  std::vector<std::optional<ProjPoint>> pos(n);
  std::vector<bool> placed_tri(tris.size(), false);
  std::queue<size_t> queue;
  for (size_t t = 0; t < tris.size(); ++t) {
    const auto& tr = tris[t];
    if (tr[0] == 0 && tr[1] == 1) {
      pos[0] = ProjPoint::infinity(kReal);
      pos[1] = ProjPoint::from_real(0.0, kReal);
      pos[tr[2]] = ProjPoint::from_real(1.0, kReal);
      placed_tri[t] = true;
      queue.push(t);
    }
  }
  while (!queue.empty()) {
    size_t t = queue.front();
    queue.pop();
    for (size_t u = 0; u < tris.size(); ++u) {
      if (placed_tri[u]) continue;
      std::vector<int> common, fresh;
      for (int v : tris[u]) {
        if (std::find(tris[t].begin(), tris[t].end(), v) != tris[t].end()) common.push_back(v);
        else fresh.push_back(v);
      }
      if (common.size() != 2) continue;
      int i = common[0], j = common[1]; // i < j
      int known = -1;
      for (int v : tris[t])
        if (v != i && v != j) known = v;
      int unknown = fresh[0];
      double s = shear_of(i, j);
      // (i, j; outside, between) = -e^s, and swapping the last two inverts it.
      double target = (i < unknown && unknown < j) ? -std::exp(s) : -std::exp(-s);
      Mobius a = mobius_to_standard(*pos[i], *pos[j], *pos[known]);
      pos[unknown] = a.inverse().apply(ProjPoint::from_real(target, kReal));
      placed_tri[u] = true;
      queue.push(u);
    }
  }
  IdealPolygon p;
  for (int v = 0; v < n; ++v) {
    if (!pos[v]) throw Error(ErrorKind::InvalidInput, "triangulation is not connected");
    p.vertices.push_back(*pos[v]);
  }
  return p.normalized();
}

IdealPolygon earthquake(const IdealPolygon& p, const std::vector<DiagonalWeight>& lamination) {
  int n = p.size();
  std::vector<std::array<int, 2>> support;
  for (const auto& l : lamination) {
    auto d = sorted_pair(l.diagonal[0], l.diagonal[1]);
    if (d[0] < 0 || d[1] >= n || d[0] == d[1] || is_side(n, d[0], d[1]))
      throw Error(ErrorKind::InvalidInput, "lamination support must consist of diagonals");
    support.push_back(d);
  }
  auto diags = complete_triangulation(n, support);
  std::vector<DiagonalWeight> shears;
  for (auto d : diags) {
    double s = shear_in_triangulation(p, diags, d);
    for (const auto& l : lamination)
      if (sorted_pair(l.diagonal[0], l.diagonal[1]) == d) s += l.weight;
    shears.push_back({d, s});
  }
  return polygon_from_shears(n, shears);
}

Eigen::MatrixXd shear_jacobian(const IdealPolygon& p, const MarkedTriangulation& tri) {
  require_normalized(p);
  int n = p.size();
  auto xs = p.coordinates();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(tri.edge_count(), std::max(0, n - 3));
  // d log|x_u - x_v|, skipping the vertex at infinity whose terms cancel.
  auto add = [&](int row, int u, int v, double sgn) {
    if (u == 0 || v == 0) return;
    double inv = 1.0 / (xs[u] - xs[v]);
    if (u >= 3) j(row, u - 3) += sgn * inv;
    if (v >= 3) j(row, v - 3) -= sgn * inv;
  };
  for (int e = 0; e < tri.edge_count(); ++e) {
    const auto& q = tri.quads[e];
    // log|(a, b; d, c)| = log|c - b| + log|d - a| - log|c - a| - log|d - b|
    add(e, q.c, q.b, 1.0);
    add(e, q.d, q.a, 1.0);
    add(e, q.c, q.a, -1.0);
    add(e, q.d, q.b, -1.0);
  }
  return j;
}

double max_vertex_imbalance(const std::vector<double>& w, const MarkedTriangulation& tri) {
  std::vector<double> sums(tri.n, 0.0);
  for (int e = 0; e < tri.edge_count(); ++e) {
    sums[tri.edges[e].a] += w[e];
    sums[tri.edges[e].b] += w[e];
  }
  double worst = 0.0;
  for (double s : sums) worst = std::max(worst, std::abs(s));
  return worst;
}

void require_balanced(const std::vector<double>& w, const MarkedTriangulation& tri, double tol) {
  if (static_cast<int>(w.size()) != tri.edge_count())
    throw Error(ErrorKind::InvalidInput, "one weight per edge");
  double imb = max_vertex_imbalance(w, tri);
  if (imb > tol) throw Error(ErrorKind::NotBalanced, "vertex sum " + std::to_string(imb));
}

ShearField infinitesimal_shear_field(const IdealPolygon& p, const MarkedTriangulation& tri,
                                     const std::vector<double>& w, double tol) {
  require_balanced(w, tri, tol);
  Eigen::MatrixXd j = shear_jacobian(p, tri);
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
  Eigen::VectorXd v = j.colPivHouseholderQr().solve(rhs);
  ShearField out;
  out.velocity.assign(p.size(), 0.0);
  for (int k = 0; k < v.size(); ++k) out.velocity[k + 3] = v[k];
  out.normal_residual = (j * v - rhs).lpNorm<Eigen::Infinity>();
  return out;
}

std::vector<double> infinitesimal_earthquake(const IdealPolygon& p,
                                             const std::vector<DiagonalWeight>& lamination) {
  int n = p.size();
  std::vector<std::array<int, 2>> support;
  for (const auto& l : lamination) support.push_back(sorted_pair(l.diagonal[0], l.diagonal[1]));
  auto diags = complete_triangulation(n, support);
  auto tri = MarkedTriangulation::symmetric(n, diags);
  Eigen::MatrixXd full = shear_jacobian(p, tri);
  Eigen::MatrixXd j(n - 3, n - 3);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 3);
  for (int k = 0; k < n - 3; ++k) {
    int e = tri.find_edge(diags[k][0], diags[k][1], Side::Top);
    j.row(k) = full.row(e);
    for (const auto& l : lamination)
      if (sorted_pair(l.diagonal[0], l.diagonal[1]) == diags[k]) rhs[k] += l.weight;
  }
  Eigen::VectorXd v = j.fullPivLu().solve(rhs);
  std::vector<double> out(n, 0.0);
  for (int k = 0; k < n - 3; ++k) out[k + 3] = v[k];
  return out;
}

Eigen::MatrixXd length_jacobian(const IdealPolygon& p, const MarkedTriangulation& tri) {
  require_normalized(p);
  auto xs = p.coordinates();
  int n = p.size();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(tri.edge_count(), std::max(0, n - 3));
  for (int e = 0; e < tri.edge_count(); ++e) {
    int a = tri.edges[e].a, b = tri.edges[e].b;
    if (a == 0 || b == 0) continue;
    double inv = 2.0 / (xs[a] - xs[b]);
    if (a >= 3) j(e, a - 3) += inv;
    if (b >= 3) j(e, b - 3) -= inv;
  }
  return j;
}

double length_fn(const std::vector<double>& theta, const IdealPolygon& p, const MarkedTriangulation& tri,
                 const std::vector<double>& decoration, double tol) {
  require_balanced(theta, tri, tol);
  auto ell = lambda_lengths(p, decoration, tri).ell;
  double total = 0.0;
  for (size_t e = 0; e < ell.size(); ++e) total += theta[e] * ell[e];
  return total;
}

Eigen::VectorXd length_fn_grad(const std::vector<double>& theta, const IdealPolygon& p,
                               const MarkedTriangulation& tri) {
  require_balanced(theta, tri);
  Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(theta.data(), theta.size());
  return length_jacobian(p, tri).transpose() * t;
}

double symplectic_form(const MarkedTriangulation& tri, const std::vector<double>& x,
                       const std::vector<double>& y) {
  Eigen::MatrixXd eps = tri.epsilon().cast<double>();
  Eigen::VectorXd vx = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  Eigen::VectorXd vy = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  return 0.5 * vx.dot(eps * vy);
}

double symplectic_form_via_shears(const MarkedTriangulation& tri, const std::vector<double>& x,
                                  const std::vector<double>& y) {
  auto ds = lengths_to_shears(y, tri);
  double total = 0.0;
  for (size_t i = 0; i < x.size(); ++i) total += x[i] * ds[i];
  return total;
}

double crossing_angle(const IdealPolygon& p, std::array<int, 2> alpha, std::array<int, 2> beta) {
  if (!diagonals_cross(alpha, beta)) throw Error(ErrorKind::InvalidInput, "geodesics do not cross");
  auto c = rep(p.vertices[beta[0]]), d = rep(p.vertices[beta[1]]);
  // w -> s det(w, c) / det(w, d) sends c to 0 and d to infinity; its matrix
  // has determinant s det(c, d), so this s keeps it orientation preserving.
  double s = rdet(c, d) > 0 ? 1.0 : -1.0;
  auto image = [&](int v) {
    auto w = rep(p.vertices[v]);
    return s * rdet(w, c) / rdet(w, d);
  };
  double a = image(alpha[0]), b = image(alpha[1]);
  return std::acos(std::clamp((a + b) / std::abs(b - a), -1.0, 1.0));
}

} // namespace quadric
