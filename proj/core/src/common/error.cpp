#include "footfall/common/error.hpp"

namespace footfall {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPose: return "InvalidPose";
    case ErrorCode::kInvalidFrame: return "InvalidFrame";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyCloud: return "EmptyCloud";
    case ErrorCode::kEmptyScene: return "EmptyScene";
    case ErrorCode::kNoFeasiblePath: return "NoFeasiblePath";
    case ErrorCode::kInsufficientSteps: return "InsufficientSteps";
    case ErrorCode::kReplanOutOfRange: return "ReplanOutOfRange";
    case ErrorCode::kRevisionConflict: return "RevisionConflict";
    case ErrorCode::kRetargetTooLate: return "RetargetTooLate";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInvalidEvent: return "InvalidEvent";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace footfall
