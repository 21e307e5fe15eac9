#pragma once

// Arithmetic in the two-dimensional real algebras R + R k with k^2 in
// {-1, 0, +1} (complex, dual and split-complex numbers), the projective line
// over them, Mobius maps, cross ratios, and the embedding of ideal points into
// the affine chart x4 = 1 of the space of 2x2 Hermitian matrices.

#include "quadric/error.h"

#include <array>
#include <utility>

namespace quadric {

struct GeneralizedComplex {
  double re = 0.0;
  double im = 0.0;
  int kappa2 = -1;

  GeneralizedComplex() = default;
  GeneralizedComplex(double re_, double im_, int kappa2_) : re(re_), im(im_), kappa2(kappa2_) {}

  static GeneralizedComplex real(double x, int kappa2) { return {x, 0.0, kappa2}; }
  static GeneralizedComplex unit(int kappa2) { return {0.0, 1.0, kappa2}; }

  // |a + b k|^2 = a^2 - k^2 b^2; may be zero or negative when k^2 >= 0.
  double norm2() const { return re * re - kappa2 * im * im; }
  // Size of the coefficient vector, used for scale-free comparisons only.
  double euclidean_size() const;
  GeneralizedComplex conj() const { return {re, -im, kappa2}; }
  bool invertible(double eps = 1e-14) const;
  GeneralizedComplex inverse() const;

  GeneralizedComplex operator-() const { return {-re, -im, kappa2}; }
  GeneralizedComplex& operator+=(const GeneralizedComplex& o);
  GeneralizedComplex& operator-=(const GeneralizedComplex& o);
  GeneralizedComplex& operator*=(const GeneralizedComplex& o);
  GeneralizedComplex& operator*=(double s);
};

GeneralizedComplex operator+(GeneralizedComplex a, const GeneralizedComplex& b);
GeneralizedComplex operator-(GeneralizedComplex a, const GeneralizedComplex& b);
GeneralizedComplex operator*(GeneralizedComplex a, const GeneralizedComplex& b);
GeneralizedComplex operator*(GeneralizedComplex a, double s);
GeneralizedComplex operator*(double s, GeneralizedComplex a);
GeneralizedComplex operator/(const GeneralizedComplex& a, const GeneralizedComplex& b);

// Left/right projections for k^2 = +1: a + b tau = x (1 - tau)/2 + y (1 + tau)/2.
std::pair<double, double> split_lr(const GeneralizedComplex& z);
GeneralizedComplex join_lr(double x, double y);

// z = sign * exp(s + k theta) for spacelike z (|z|^2 > 0).
//   k^2 = -1: z = exp(s + i theta), sign is always +1, theta in (-pi, pi].
//   k^2 =  0: z = sign * e^s (1 + sigma theta).
//   k^2 = +1: z = sign * e^s (cosh theta + tau sinh theta).
struct ShapeDecomposition {
  int sign = 1;
  double s = 0.0;
  double theta = 0.0;
};
ShapeDecomposition decompose_shape(const GeneralizedComplex& z);
GeneralizedComplex compose_shape(const ShapeDecomposition& d, int kappa2);

// Point [u : v] of P^1 B. Infinity is [1 : 0].
struct ProjPoint {
  GeneralizedComplex u;
  GeneralizedComplex v;

  ProjPoint() = default;
  ProjPoint(GeneralizedComplex u_, GeneralizedComplex v_) : u(u_), v(v_) {}

  static ProjPoint from_value(const GeneralizedComplex& z);
  static ProjPoint from_real(double x, int kappa2);
  static ProjPoint infinity(int kappa2);
  // Point of the k^2 = +1 line with left/right projections x and y (either may be infinite).
  static ProjPoint from_lr(double x, double y);

  int kappa2() const { return u.kappa2; }
  bool is_real() const { return u.im == 0.0 && v.im == 0.0; }
  // Representative scaled so that the larger coefficient size is 1.
  ProjPoint normalized() const;
  // Affine value u / v; throws CrossRatioAtInfinity when v is not invertible.
  GeneralizedComplex value() const;
  // For real points: u/v, or +infinity for [1:0].
  double real_value() const;
  // Left/right projections (k^2 = +1) as real projective pairs.
  std::pair<std::array<double, 2>, std::array<double, 2>> split() const;
};

// u1 v2 - v1 u2.
GeneralizedComplex det(const ProjPoint& p, const ProjPoint& q);
// Projective equality: the determinant of normalized representatives vanishes.
bool same_point(const ProjPoint& p, const ProjPoint& q, double eps = kDefaultTolerance);

struct Mobius {
  GeneralizedComplex a, b, c, d;

  static Mobius identity(int kappa2);
  ProjPoint apply(const ProjPoint& z) const;
  Mobius compose(const Mobius& inner) const; // this o inner
  Mobius inverse() const;
  GeneralizedComplex det() const { return a * d - b * c; }
};

// Maps z1 -> infinity, z2 -> 0, z3 -> 1.
Mobius mobius_to_standard(const ProjPoint& z1, const ProjPoint& z2, const ProjPoint& z3);

// (z1, z2; z3, z4) = A z4 where A = mobius_to_standard(z1, z2, z3).
GeneralizedComplex cross_ratio(const ProjPoint& z1, const ProjPoint& z2, const ProjPoint& z3,
                               const ProjPoint& z4);

struct AffinePoint3 {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;
};

// Homogeneous coordinates (x1, x2, x3, x4) of the rank-one matrix v v*.
std::array<double, 4> hermitian_coordinates(const ProjPoint& v);
// The same point in the chart x4 = 1. Throws AtChartInfinity when x4 vanishes.
AffinePoint3 embed_affine(const ProjPoint& v);

// x1^2 + x2^2 - k^2 x3^2, equal to 1 on the quadric.
double quadric_form(const AffinePoint3& x, int kappa2);

} // namespace quadric
