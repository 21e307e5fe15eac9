#include "quadric/error.h"

namespace quadric {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DegenerateTriple: return "DegenerateTriple";
  case ErrorKind::CrossRatioAtInfinity: return "CrossRatioAtInfinity";
  case ErrorKind::NotSpacelike: return "NotSpacelike";
  case ErrorKind::WrongAlgebra: return "WrongAlgebra";
  case ErrorKind::AtChartInfinity: return "AtChartInfinity";
  case ErrorKind::DegenerateQuad: return "DegenerateQuad";
  case ErrorKind::OverlappingSupport: return "OverlappingSupport";
  case ErrorKind::NotBalanced: return "NotBalanced";
  case ErrorKind::NotPlanar: return "NotPlanar";
  case ErrorKind::NotThreeConnected: return "NotThreeConnected";
  case ErrorKind::InvalidGraph: return "InvalidGraph";
  case ErrorKind::TooLarge: return "TooLarge";
  case ErrorKind::NotInCone: return "NotInCone";
  case ErrorKind::RivinViolated: return "RivinViolated";
  case ErrorKind::DegenerateHull: return "DegenerateHull";
  case ErrorKind::NormalizationFailed: return "NormalizationFailed";
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::CombinatoricsMismatch: return "CombinatoricsMismatch";
  case ErrorKind::StepCollapse: return "StepCollapse";
  case ErrorKind::CombinatoricsChanged: return "CombinatoricsChanged";
  case ErrorKind::DegenerateEdge: return "DegenerateEdge";
  case ErrorKind::Degenerate: return "Degenerate";
  case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

} // namespace quadric
