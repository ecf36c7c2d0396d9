#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lerw {

enum class ErrorCode {
  MissingOrigin,
  Disconnected,
  ComplementDisconnected,
  EmptyDomain,
  SizeTooSmall,
  BranchPointOnBoundary,
  InvalidCut,
  NotALoop,
  EdgeOutsideDomain,
  Unreachable,
  PathDependentParity,
  OutOfDomain,
  SolveFailure,
  ZeroConditioningMass,
  TooLarge,
  LambdaNotInterior,
  ZeroDenominator,
  OnAlpha,
  AspectOutOfRange,
  QuadratureFailure,
  InsufficientPoints,
  NonPositiveValue,
  UnknownStudy,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lerw
