#pragma once

#include <stdexcept>
#include <string>

namespace quadric {

// Default tolerance for metric residuals (distances to a quadric, angle
// residuals, balance of weights). Every operation that depends on it takes an
// override.
inline constexpr double kDefaultTolerance = 1e-10;

enum class ErrorKind {
  DegenerateTriple,
  CrossRatioAtInfinity,
  NotSpacelike,
  WrongAlgebra,
  AtChartInfinity,
  DegenerateQuad,
  OverlappingSupport,
  NotBalanced,
  NotPlanar,
  NotThreeConnected,
  InvalidGraph,
  TooLarge,
  NotInCone,
  RivinViolated,
  DegenerateHull,
  NormalizationFailed,
  NoConvergence,
  CombinatoricsMismatch,
  StepCollapse,
  CombinatoricsChanged,
  DegenerateEdge,
  Degenerate,
  InvalidInput,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace quadric
