#pragma once

// The angle cone A_G of a marked graph (sign, vertex-sum and circuit
// conditions), Rivin's conditions for ideal hyperbolic polyhedra, the
// conversions between the two systems, and exact LP feasibility certificates.
//
// Angles are indexed by the edges of the graph (PlaneGraph::edges order); a
// circuit of the dual graph is a list of primal edge indices.

#include "quadric/exact.h"
#include "quadric/graph.h"

#include <cstdint>
#include <string>
#include <vector>

namespace quadric {

constexpr std::uint64_t kDefaultCircuitBudget = 10'000'000;

enum class ViolationKind {
  EquatorSign,  // equator angle not negative
  InteriorSign, // top or bottom angle not positive
  VertexSum,    // angles around a vertex do not sum to 0 (or 2 pi for Rivin)
  Circuit,      // circuit sum not above its bound
  Range,        // Rivin angle outside (0, pi)
};

struct Violation {
  ViolationKind kind;
  int vertex = -1;        // for VertexSum
  std::vector<int> edges; // the edge, or the circuit
  double value = 0.0;     // offending value (sum minus target for sums)
};

struct ConditionReport {
  std::vector<Violation> violations;
  std::size_t circuits_checked = 0;
  bool ok() const { return violations.empty(); }
};

const char* violation_kind_name(ViolationKind k);

// Conditions (i)-(iii). Strict inequalities are checked strictly, vertex sums
// to within tol.
ConditionReport check_ads_conditions(const EquatorGraph& g, const std::vector<double>& theta,
                                     double tol = kDefaultTolerance,
                                     std::uint64_t budget = kDefaultCircuitBudget);
ConditionReport check_ads_conditions(const EquatorGraph& g, const std::vector<ExactAngle>& theta,
                                     std::uint64_t budget = kDefaultCircuitBudget);

// Rivin: 0 < theta < pi, sums 2 pi around vertices, sums above 2 pi on the
// other simple dual circuits.
ConditionReport check_rivin_conditions(const PlaneGraph& g, const std::vector<double>& theta,
                                       double tol = kDefaultTolerance,
                                       std::uint64_t budget = kDefaultCircuitBudget);
ConditionReport check_rivin_conditions(const PlaneGraph& g, const std::vector<ExactAngle>& theta,
                                       std::uint64_t budget = kDefaultCircuitBudget);

std::vector<ExactAngle> exact_angles(const std::vector<double>& theta);
std::vector<double> angle_values(const std::vector<ExactAngle>& theta);

struct RivinConversion {
  Rational t;
  std::vector<ExactAngle> theta; // t theta off the equator, pi + t theta on it
};
// t is a rational at most half the largest value keeping every |t theta| below
// pi and every simple dual circuit sum of t theta above -pi.
RivinConversion ads_to_rivin(const EquatorGraph& g, const std::vector<ExactAngle>& theta,
                             std::uint64_t budget = kDefaultCircuitBudget);
std::vector<ExactAngle> rivin_to_ads(const EquatorGraph& g, const std::vector<ExactAngle>& theta_prime,
                                     std::uint64_t budget = kDefaultCircuitBudget);

enum class ConditionSystem { Rivin, Ads };

struct FeasibilityCertificate {
  ConditionSystem system = ConditionSystem::Ads;
  bool feasible = false;
  // Optimal slack of the strict inequalities under the normalization.
  Rational margin;
  // Ads: angles theta. Rivin: angles in units of pi.
  std::vector<Rational> witness;
  // Circuit constraints that were active in the final LP.
  std::vector<std::vector<int>> cuts;
  int lp_rounds = 0;
};

// Maximizes the slack of the strict inequalities, adding circuit constraints
// lazily until the optimum satisfies all of them. Ads uses the equator 0..N-1.
FeasibilityCertificate feasibility(const EquatorGraph& g, ConditionSystem system,
                                   std::uint64_t budget = kDefaultCircuitBudget);
FeasibilityCertificate rivin_feasibility(const PlaneGraph& g, std::uint64_t budget = kDefaultCircuitBudget);

// Exact replay: feasible certificates are checked against every condition,
// infeasible ones by re-solving the recorded LP and confirming a zero optimum.
bool replay(const EquatorGraph& g, const FeasibilityCertificate& cert,
            std::uint64_t budget = kDefaultCircuitBudget);
bool replay_rivin(const PlaneGraph& g, const FeasibilityCertificate& cert,
                  std::uint64_t budget = kDefaultCircuitBudget);

} // namespace quadric
