#include "quadric/lp.h"

#include "quadric/error.h"

namespace quadric {

namespace {

struct Tableau {
  int rows = 0, cols = 0;              // constraint rows, variable columns (rhs is column `cols`)
  std::vector<std::vector<Rational>> t; // rows + 1 lines, the last is the objective row
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rational p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i <= rows; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rational f = t[i][c];
      for (int j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Sets the objective row for maximizing cost . x and makes it canonical.
  void set_objective(const std::vector<Rational>& cost) {
    auto& z = t[rows];
    for (int j = 0; j < cols; ++j) z[j] = -cost[j];
    z[cols] = 0;
    for (int i = 0; i < rows; ++i) {
      Rational f = z[basis[i]];
      if (f == 0) continue;
      for (int j = 0; j <= cols; ++j)
        if (t[i][j] != 0) z[j] -= f * t[i][j];
    }
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && t[rows][j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * x[i];
  return s;
}

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
  int n = lp.num_vars;
  int m = static_cast<int>(lp.constraints.size());
  if (static_cast<int>(lp.objective.size()) != n) throw Error(ErrorKind::InvalidInput, "objective size mismatch");

  // Normalize to non-negative right-hand sides.
  std::vector<LinearConstraint> rows = lp.constraints;
  for (auto& c : rows) {
    if (static_cast<int>(c.coeffs.size()) != n) throw Error(ErrorKind::InvalidInput, "constraint size mismatch");
    if (c.rhs < 0) {
      for (auto& a : c.coeffs) a = -a;
      c.rhs = -c.rhs;
      if (c.relation == Relation::LessEqual) c.relation = Relation::GreaterEqual;
      else if (c.relation == Relation::GreaterEqual) c.relation = Relation::LessEqual;
    }
  }
  int slacks = 0, artificials = 0;
  for (const auto& c : rows) {
    if (c.relation != Relation::Equal) ++slacks;
    if (c.relation != Relation::LessEqual) ++artificials;
  }
  Tableau tab;
  tab.rows = m;
  tab.cols = n + slacks + artificials;
  tab.t.assign(m + 1, std::vector<Rational>(tab.cols + 1, 0));
  tab.basis.assign(m, -1);
  int next_slack = n, next_art = n + slacks;
  for (int i = 0; i < m; ++i) {
    const auto& c = rows[i];
    for (int j = 0; j < n; ++j) tab.t[i][j] = c.coeffs[j];
    tab.t[i][tab.cols] = c.rhs;
    if (c.relation == Relation::LessEqual) {
      tab.t[i][next_slack] = 1;
      tab.basis[i] = next_slack++;
    } else {
      if (c.relation == Relation::GreaterEqual) tab.t[i][next_slack++] = -1;
      tab.t[i][next_art] = 1;
      tab.basis[i] = next_art++;
    }
  }

  std::vector<bool> allowed(tab.cols, true);
  LpResult result;
  if (artificials > 0) {
    std::vector<Rational> cost(tab.cols, 0);
    for (int j = n + slacks; j < tab.cols; ++j) cost[j] = -1;
    tab.set_objective(cost);
    tab.optimize(allowed);
    if (tab.t[m][tab.cols] != 0) return result; // infeasible: artificial sum stays positive
    // Drive remaining artificials out of the basis; rows where that fails are redundant.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < n + slacks) continue;
      for (int j = 0; j < n + slacks; ++j)
        if (tab.t[i][j] != 0) {
          tab.pivot(i, j);
          break;
        }
    }
    for (int j = n + slacks; j < tab.cols; ++j) allowed[j] = false;
  }
  std::vector<Rational> cost(tab.cols, 0);
  for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
  tab.set_objective(cost);
  if (!tab.optimize(allowed)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, 0);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.t[i][tab.cols];
  result.value = dot(lp.objective, result.x);
  return result;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != lp.num_vars) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& c : lp.constraints) {
    Rational s = dot(c.coeffs, x);
    if (c.relation == Relation::LessEqual && s > c.rhs) return false;
    if (c.relation == Relation::GreaterEqual && s < c.rhs) return false;
    if (c.relation == Relation::Equal && s != c.rhs) return false;
  }
  return true;
}

} // namespace quadric
