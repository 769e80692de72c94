#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

// Stable error codes surfaced by the CLI (exit code mapping lives in tools/).
enum class ErrorCode {
  DimensionMismatch,
  ConeViolation,
  BranchFailure,
  StepExitsDomain,
  SolveFailure,
  NotAWeightVector,
  ParseError,
  VariableError,
  PhaseWeightError,
  EvalDomainError,
  KindError,
  SamplingStall,
  IllConditioned,
  UnsupportedLambda,
  ExponentRange,
  PointNotInDomain,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ConeViolation: return "CONE_VIOLATION";
    case ErrorCode::BranchFailure: return "BRANCH_FAILURE";
    case ErrorCode::StepExitsDomain: return "STEP_EXITS_DOMAIN";
    case ErrorCode::SolveFailure: return "SOLVE_FAILURE";
    case ErrorCode::NotAWeightVector: return "NOT_A_WEIGHT_VECTOR";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::VariableError: return "VARIABLE_ERROR";
    case ErrorCode::PhaseWeightError: return "PHASE_WEIGHT_ERROR";
    case ErrorCode::EvalDomainError: return "EVAL_DOMAIN_ERROR";
    case ErrorCode::KindError: return "KIND_ERROR";
    case ErrorCode::SamplingStall: return "SAMPLING_STALL";
    case ErrorCode::IllConditioned: return "ILL_CONDITIONED";
    case ErrorCode::UnsupportedLambda: return "UNSUPPORTED_LAMBDA";
    case ErrorCode::ExponentRange: return "EXPONENT_RANGE";
    case ErrorCode::PointNotInDomain: return "POINT_NOT_IN_DOMAIN";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace tlab
