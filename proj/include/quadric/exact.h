#pragma once

// Exact rational helpers and angles of the form a*pi + b with rational a, b.
// Signs of such angles are decided exactly: pi is irrational, so a*pi + b = 0
// only when a = b = 0, and otherwise rational enclosures of pi settle the sign.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace quadric {

using Rational = mpq_class;

// Exact value of a finite double.
Rational rational_from_double(double x);
// "p/q" (or "p" when q = 1).
std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

struct ExactAngle {
  Rational pi_coeff;
  Rational offset;

  ExactAngle() = default;
  // Rationals built from (p, q) pairs may arrive unreduced; GMP needs them canonical.
  ExactAngle(Rational pi_coeff_, Rational offset_)
      : pi_coeff(std::move(pi_coeff_)), offset(std::move(offset_)) {
    pi_coeff.canonicalize();
    offset.canonicalize();
  }

  static ExactAngle from_double(double x) { return {0, rational_from_double(x)}; }
  static ExactAngle multiple_of_pi(const Rational& a) { return {a, 0}; }

  double to_double() const;
  ExactAngle operator-() const { return {-pi_coeff, -offset}; }
};

ExactAngle operator+(const ExactAngle& a, const ExactAngle& b);
ExactAngle operator-(const ExactAngle& a, const ExactAngle& b);
ExactAngle operator*(const Rational& s, const ExactAngle& a);
bool operator==(const ExactAngle& a, const ExactAngle& b);

// -1, 0 or +1.
int sign(const ExactAngle& a);
int compare(const ExactAngle& a, const ExactAngle& b);

// A rational strictly below pi (used where a rational stand-in is required).
Rational pi_lower_bound();

std::string exact_angle_to_string(const ExactAngle& a);

} // namespace quadric
