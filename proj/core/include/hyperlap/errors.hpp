#pragma once

#include <stdexcept>
#include <string>

namespace hyperlap {

enum class ErrorCode {
  ParseError,
  NotConnected,
  DemandNotZeroSum,
  NonpositiveWeight,
  EmptyEdge,
  ZeroTotalDegree,
  ZeroDegreeVertex,
  NonpositiveLambda,
  NonDyadicDemand,
  NotZeroSumOnEdge,
  InvariantViolation,
  OutOfDomain,
  NumericalBreakdown,
  Infeasible,
  Unbounded,
  NegativeCycleDetected,
  CapacityMultiplierNonzero,
  VerificationFailure,
};

const char* error_code_name(ErrorCode code);

/// All library failures funnel through this exception; the CLI maps
/// code categories onto its exit-status taxonomy.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::DemandNotZeroSum: return "DemandNotZeroSum";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::EmptyEdge: return "EmptyEdge";
    case ErrorCode::ZeroTotalDegree: return "ZeroTotalDegree";
    case ErrorCode::ZeroDegreeVertex: return "ZeroDegreeVertex";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::NonDyadicDemand: return "NonDyadicDemand";
    case ErrorCode::NotZeroSumOnEdge: return "NotZeroSumOnEdge";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NegativeCycleDetected: return "NegativeCycleDetected";
    case ErrorCode::CapacityMultiplierNonzero: return "CapacityMultiplierNonzero";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
  }
  return "UnknownError";
}

}  // namespace hyperlap
