#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symplecta {

enum class ErrorCode {
  InvalidArgument,
  OddDimension,
  NotAntisymmetric,
  Degenerate,
  NotPositiveDefinite,
  DimensionMismatch,
  NumericalFailure,
  NegativeExponent,
  SingularResult,
  NonPrimaryInput,
  DominationFails,
  InvalidPair,
  SingularOperator,
  GridTooCoarse,
  BumpLeavesDomain,
  NonPositivePotential,
  PotentialUndefined,
  EmptyRegion,
  FullRegion,
  NotPure,
  StepOutOfRange,
  ParseError,
  UnknownKey,
  InvalidValue,
  UnsupportedFormat,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symplecta
