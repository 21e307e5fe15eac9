#include "quadric/exact.h"

#include "quadric/error.h"

#include <cmath>

namespace quadric {

namespace {

// pi truncated to 79 decimals; the enclosure is [digits, digits + 10^-79].
const char* kPiDigits =
    "31415926535897932384626433832795028841971693993751058209749445923078164062862089";

const Rational& pi_low() {
  static const Rational v = [] {
    mpz_class num(kPiDigits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 79);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }();
  return v;
}

const Rational& pi_high() {
  static const Rational v = [] {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 79);
    Rational q(mpz_class(1), den);
    q.canonicalize();
    return Rational(pi_low() + q);
  }();
  return v;
}

} // namespace

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite value has no rational form");
  Rational q(x);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidInput, "not a rational: " + s);
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

double ExactAngle::to_double() const { return pi_coeff.get_d() * M_PI + offset.get_d(); }

ExactAngle operator+(const ExactAngle& a, const ExactAngle& b) {
  return {a.pi_coeff + b.pi_coeff, a.offset + b.offset};
}

ExactAngle operator-(const ExactAngle& a, const ExactAngle& b) {
  return {a.pi_coeff - b.pi_coeff, a.offset - b.offset};
}

ExactAngle operator*(const Rational& s, const ExactAngle& a) {
  return {s * a.pi_coeff, s * a.offset};
}

bool operator==(const ExactAngle& a, const ExactAngle& b) {
  return a.pi_coeff == b.pi_coeff && a.offset == b.offset;
}

int sign(const ExactAngle& a) {
  int sa = sgn(a.pi_coeff);
  int sb = sgn(a.offset);
  if (sa == 0) return sb;
  if (sb == 0 || sb == sa) return sa;
  // a pi + b with opposite signs: compare pi against -b/a.
  Rational r = -a.offset / a.pi_coeff; // positive
  if (r < pi_low()) return sa;
  if (r > pi_high()) return -sa;
  throw Error(ErrorKind::InvalidInput, "angle too close to zero to decide with the built-in pi enclosure");
}

int compare(const ExactAngle& a, const ExactAngle& b) { return sign(a - b); }

Rational pi_lower_bound() { return Rational(333, 106); }

std::string exact_angle_to_string(const ExactAngle& a) {
  if (a.pi_coeff == 0) return rational_to_string(a.offset);
  std::string s = rational_to_string(a.pi_coeff) + "*pi";
  if (a.offset != 0) s += (a.offset > 0 ? "+" : "") + rational_to_string(a.offset);
  return s;
}

} // namespace quadric
