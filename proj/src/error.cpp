#include "symplecta/error.hpp"

namespace symplecta {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::SingularResult: return "SingularResult";
    case ErrorCode::NonPrimaryInput: return "NonPrimaryInput";
    case ErrorCode::DominationFails: return "DominationFails";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::BumpLeavesDomain: return "BumpLeavesDomain";
    case ErrorCode::NonPositivePotential: return "NonPositivePotential";
    case ErrorCode::PotentialUndefined: return "PotentialUndefined";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::FullRegion: return "FullRegion";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

}  // namespace symplecta
