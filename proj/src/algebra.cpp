#include "quadric/algebra.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quadric {

namespace {

void require_same_algebra(const GeneralizedComplex& a, const GeneralizedComplex& b) {
  if (a.kappa2 != b.kappa2)
    throw Error(ErrorKind::WrongAlgebra, "mixing numbers from different algebras");
}

} // namespace

double GeneralizedComplex::euclidean_size() const { return std::hypot(re, im); }

bool GeneralizedComplex::invertible(double eps) const {
  double size = euclidean_size();
  if (size == 0.0) return false;
  return std::abs(norm2()) > eps * size * size;
}

GeneralizedComplex GeneralizedComplex::inverse() const {
  double n = norm2();
  if (n == 0.0) throw Error(ErrorKind::CrossRatioAtInfinity, "inverting a null element");
  return {re / n, -im / n, kappa2};
}

GeneralizedComplex& GeneralizedComplex::operator+=(const GeneralizedComplex& o) {
  require_same_algebra(*this, o);
  re += o.re;
  im += o.im;
  return *this;
}

GeneralizedComplex& GeneralizedComplex::operator-=(const GeneralizedComplex& o) {
  require_same_algebra(*this, o);
  re -= o.re;
  im -= o.im;
  return *this;
}

GeneralizedComplex& GeneralizedComplex::operator*=(const GeneralizedComplex& o) {
  require_same_algebra(*this, o);
  double r = re * o.re + kappa2 * im * o.im;
  double i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

GeneralizedComplex& GeneralizedComplex::operator*=(double s) {
  re *= s;
  im *= s;
  return *this;
}

GeneralizedComplex operator+(GeneralizedComplex a, const GeneralizedComplex& b) { return a += b; }
GeneralizedComplex operator-(GeneralizedComplex a, const GeneralizedComplex& b) { return a -= b; }
GeneralizedComplex operator*(GeneralizedComplex a, const GeneralizedComplex& b) { return a *= b; }
GeneralizedComplex operator*(GeneralizedComplex a, double s) { return a *= s; }
GeneralizedComplex operator*(double s, GeneralizedComplex a) { return a *= s; }
GeneralizedComplex operator/(const GeneralizedComplex& a, const GeneralizedComplex& b) {
  return a * b.inverse();
}

std::pair<double, double> split_lr(const GeneralizedComplex& z) {
  if (z.kappa2 != 1) throw Error(ErrorKind::WrongAlgebra, "split_lr needs tau^2 = +1");
  return {z.re - z.im, z.re + z.im};
}

GeneralizedComplex join_lr(double x, double y) { return {(x + y) / 2.0, (y - x) / 2.0, 1}; }

ShapeDecomposition decompose_shape(const GeneralizedComplex& z) {
  ShapeDecomposition d;
  switch (z.kappa2) {
  case -1: {
    double n = z.norm2();
    if (!(n > 0.0)) throw Error(ErrorKind::NotSpacelike, "zero complex number");
    d.s = 0.5 * std::log(n);
    d.theta = std::atan2(z.im, z.re);
    return d;
  }
  case 0: {
    if (z.re == 0.0) throw Error(ErrorKind::NotSpacelike, "dual number with zero real part");
    d.sign = z.re > 0 ? 1 : -1;
    d.s = std::log(std::abs(z.re));
    d.theta = z.im / z.re;
    return d;
  }
  case 1: {
    auto [x, y] = split_lr(z);
    if (!(x * y > 0.0))
      throw Error(ErrorKind::NotSpacelike, "split-complex number with |z|^2 <= 0");
    d.sign = x > 0 ? 1 : -1;
    d.s = 0.5 * std::log(x * y);
    d.theta = 0.5 * std::log(y / x);
    return d;
  }
  default: throw Error(ErrorKind::WrongAlgebra, "kappa^2 must be -1, 0 or 1");
  }
}

GeneralizedComplex compose_shape(const ShapeDecomposition& d, int kappa2) {
  double r = d.sign * std::exp(d.s);
  switch (kappa2) {
  case -1: return {r * std::cos(d.theta), r * std::sin(d.theta), -1};
  case 0: return {r, r * d.theta, 0};
  case 1: return {r * std::cosh(d.theta), r * std::sinh(d.theta), 1};
  default: throw Error(ErrorKind::WrongAlgebra, "kappa^2 must be -1, 0 or 1");
  }
}

ProjPoint ProjPoint::from_value(const GeneralizedComplex& z) {
  return {z, GeneralizedComplex::real(1.0, z.kappa2)};
}

ProjPoint ProjPoint::from_real(double x, int kappa2) {
  if (std::isinf(x)) return infinity(kappa2);
  return {GeneralizedComplex::real(x, kappa2), GeneralizedComplex::real(1.0, kappa2)};
}

ProjPoint ProjPoint::infinity(int kappa2) {
  return {GeneralizedComplex::real(1.0, kappa2), GeneralizedComplex::real(0.0, kappa2)};
}

ProjPoint ProjPoint::from_lr(double x, double y) {
  auto pair_of = [](double t) -> std::array<double, 2> {
    if (std::isinf(t)) return {1.0, 0.0};
    return {t, 1.0};
  };
  auto l = pair_of(x);
  auto r = pair_of(y);
  return {join_lr(l[0], r[0]), join_lr(l[1], r[1])};
}

ProjPoint ProjPoint::normalized() const {
  double m = std::max(u.euclidean_size(), v.euclidean_size());
  if (m == 0.0) throw Error(ErrorKind::InvalidInput, "zero representative of a projective point");
  return {u * (1.0 / m), v * (1.0 / m)};
}

GeneralizedComplex ProjPoint::value() const {
  ProjPoint n = normalized();
  if (!n.v.invertible()) throw Error(ErrorKind::CrossRatioAtInfinity, "point at infinity");
  return n.u / n.v;
}

double ProjPoint::real_value() const {
  if (v.re == 0.0 && v.im == 0.0) return std::numeric_limits<double>::infinity();
  return u.re / v.re;
}

std::pair<std::array<double, 2>, std::array<double, 2>> ProjPoint::split() const {
  auto [ul, ur] = split_lr(u);
  auto [vl, vr] = split_lr(v);
  return {{ul, vl}, {ur, vr}};
}

GeneralizedComplex det(const ProjPoint& p, const ProjPoint& q) { return p.u * q.v - p.v * q.u; }

bool same_point(const ProjPoint& p, const ProjPoint& q, double eps) {
  return det(p.normalized(), q.normalized()).euclidean_size() < eps;
}

Mobius Mobius::identity(int kappa2) {
  auto one = GeneralizedComplex::real(1.0, kappa2);
  auto zero = GeneralizedComplex::real(0.0, kappa2);
  return {one, zero, zero, one};
}

ProjPoint Mobius::apply(const ProjPoint& z) const {
  return ProjPoint(a * z.u + b * z.v, c * z.u + d * z.v).normalized();
}

Mobius Mobius::compose(const Mobius& m) const {
  return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
}

Mobius Mobius::inverse() const { return {d, -b, -c, a}; }

Mobius mobius_to_standard(const ProjPoint& z1_, const ProjPoint& z2_, const ProjPoint& z3_) {
  ProjPoint z1 = z1_.normalized(), z2 = z2_.normalized(), z3 = z3_.normalized();
  GeneralizedComplex d12 = det(z1, z2), d31 = det(z3, z1), d32 = det(z3, z2);
  for (const auto* dd : {&d12, &d31, &d32}) {
    if (!(dd->norm2() > 1e-14))
      throw Error(ErrorKind::DegenerateTriple, "points of the triple are not in general position");
  }
  // A w = [det(z3,z1) det(w,z2) : det(z3,z2) det(w,z1)].
  return {d31 * z2.v, -(d31 * z2.u), d32 * z1.v, -(d32 * z1.u)};
}

GeneralizedComplex cross_ratio(const ProjPoint& z1, const ProjPoint& z2, const ProjPoint& z3,
                               const ProjPoint& z4) {
  ProjPoint w = mobius_to_standard(z1, z2, z3).apply(z4);
  if (!w.v.invertible())
    throw Error(ErrorKind::CrossRatioAtInfinity, "fourth point is sent to a null point");
  return w.u / w.v;
}

std::array<double, 4> hermitian_coordinates(const ProjPoint& p) {
  // v v* = [[x4 + x1, x2 - x3 k], [x2 + x3 k, x4 - x1]].
  double uu = p.u.norm2();
  double ww = p.v.norm2();
  GeneralizedComplex off = p.u * p.v.conj();
  return {(uu - ww) / 2.0, off.re, -off.im, (uu + ww) / 2.0};
}

AffinePoint3 embed_affine(const ProjPoint& v) {
  auto x = hermitian_coordinates(v.normalized());
  if (std::abs(x[3]) < 1e-12)
    throw Error(ErrorKind::AtChartInfinity, "point lies on the plane at infinity of the chart");
  return {x[0] / x[3], x[1] / x[3], x[2] / x[3]};
}

double quadric_form(const AffinePoint3& x, int kappa2) {
  return x.x1 * x.x1 + x.x2 * x.x2 - kappa2 * x.x3 * x.x3;
}

} // namespace quadric
