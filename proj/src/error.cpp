#include "leech/error.hpp"

namespace leech {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::UnstableA: return "UnstableA";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoStabilizingSolution: return "NoStabilizingSolution";
    case ErrorCode::NotStabilizing: return "NotStabilizing";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::SemidefiniteUnsupported: return "SemidefiniteUnsupported";
    case ErrorCode::NonMinimal: return "NonMinimal";
    case ErrorCode::PointOnBoundary: return "PointOnBoundary";
    case ErrorCode::SectionNotPositive: return "SectionNotPositive";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace leech
