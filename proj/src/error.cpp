#include "wigner/error.hpp"

namespace wigner {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnsupportedNorm: return "UnsupportedNorm";
    case ErrorCode::kAlreadyReal: return "AlreadyReal";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotIsometric: return "NotIsometric";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kMissingZeroImage: return "MissingZeroImage";
    case ErrorCode::kNeedsEvaluableMap: return "NeedsEvaluableMap";
    case ErrorCode::kRealFieldUnsupported: return "RealFieldUnsupported";
    case ErrorCode::kMagnitudeMismatch: return "MagnitudeMismatch";
    case ErrorCode::kInconsistentCycle: return "InconsistentCycle";
    case ErrorCode::kTooManyNodes: return "TooManyNodes";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNotPhaseEquivalent: return "NotPhaseEquivalent";
    case ErrorCode::kSchema: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace wigner
