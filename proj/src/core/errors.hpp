#pragma once

#include <stdexcept>
#include <string>

namespace dissipact {

enum class ErrorCode {
  DimensionMismatch,
  StructureViolation,
  NewtonDivergence,
  SingularJacobian,
  IllegalKind,
  NonQuadraticEnergy,
  RankDeficientBasis,
  SingularReducedMass,
  InconsistentInitialData,
  TrajectoryMismatch,
  NoAlgebraicRows,
  UnknownModel,
  InvalidParams,
  ParseError,
  UnknownKey,
  InvalidValue,
  IoError,
};

/// All library failures are reported through this exception type; the code
/// maps 1:1 onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::IllegalKind: return "IllegalKind";
    case ErrorCode::NonQuadraticEnergy: return "NonQuadraticEnergy";
    case ErrorCode::RankDeficientBasis: return "RankDeficientBasis";
    case ErrorCode::SingularReducedMass: return "SingularReducedMass";
    case ErrorCode::InconsistentInitialData: return "InconsistentInitialData";
    case ErrorCode::TrajectoryMismatch: return "TrajectoryMismatch";
    case ErrorCode::NoAlgebraicRows: return "NoAlgebraicRows";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace dissipact
