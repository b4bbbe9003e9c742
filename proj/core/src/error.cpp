#include "confspec/error.hpp"

namespace confspec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kEmptyMeasure: return "EmptyMeasure";
    case ErrorCode::kNotAdmissible: return "NotAdmissible";
    case ErrorCode::kNonIntegralDegree: return "NonIntegralDegree";
    case ErrorCode::kDegenerateLattice: return "DegenerateLattice";
    case ErrorCode::kTriangleInequalityViolated: return "TriangleInequalityViolated";
    case ErrorCode::kNonManifold: return "NonManifold";
    case ErrorCode::kWrongLattice: return "WrongLattice";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kZeroFunction: return "ZeroFunction";
    case ErrorCode::kSearchFailure: return "SearchFailure";
    case ErrorCode::kModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::kUnknownRow: return "UnknownRow";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace confspec
