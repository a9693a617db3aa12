#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixlink {

enum class ErrorCode {
  EmptyPolynomial,
  InvalidWeights,
  NonUnitArgument,
  NotHomogeneous,
  NotConvenient,
  BudgetExceeded,
  TooFewSamples,
  RadialBudgetTooSmall,
  InvalidConfiguration,
  ZeroOnContour,
  TangentialCrossing,
  NotOnSphere,
  NotOnVariety,
  NoNegativeOrbit,
  IsotopyBlocked,
  OnLink,
  AtPole,
  CurvesTooClose,
  PoleSearchFailed,
  SyntaxError,
  ExponentOverflow,
  EmptyData,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyPolynomial: return "EmptyPolynomial";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::NonUnitArgument: return "NonUnitArgument";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotConvenient: return "NotConvenient";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::RadialBudgetTooSmall: return "RadialBudgetTooSmall";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::ZeroOnContour: return "ZeroOnContour";
    case ErrorCode::TangentialCrossing: return "TangentialCrossing";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::NotOnVariety: return "NotOnVariety";
    case ErrorCode::NoNegativeOrbit: return "NoNegativeOrbit";
    case ErrorCode::IsotopyBlocked: return "IsotopyBlocked";
    case ErrorCode::OnLink: return "OnLink";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::CurvesTooClose: return "CurvesTooClose";
    case ErrorCode::PoleSearchFailed: return "PoleSearchFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::EmptyData: return "EmptyData";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a machine-readable report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mixlink
