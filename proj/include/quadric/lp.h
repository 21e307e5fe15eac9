#pragma once

// Exact linear programming over the rationals: two-phase dense simplex with
// Bland's rule, so it always terminates and never depends on a tolerance.

#include "quadric/exact.h"

#include <vector>

namespace quadric {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  std::vector<Rational> coeffs; // one per variable
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// maximize objective . x subject to the constraints and x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

LpResult solve_lp(const LinearProgram& lp);

// Exact check of a point against all constraints and x >= 0.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

} // namespace quadric
