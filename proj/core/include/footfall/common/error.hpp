#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace footfall {

/// Failure categories surfaced by the library. Each maps onto a named error of
/// the public contract so callers (CLI, simulator) can branch on it.
enum class ErrorCode {
  kInvalidPose,
  kInvalidFrame,
  kInvalidArgument,
  kEmptyCloud,
  kEmptyScene,
  kNoFeasiblePath,
  kInsufficientSteps,
  kReplanOutOfRange,
  kRevisionConflict,
  kRetargetTooLate,
  kNumericalFailure,
  kInvalidEvent,
  kParseError,
};

std::string_view ToString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ToString(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Throws Error(code, message) when `condition` is false.
inline void ThrowUnless(bool condition, ErrorCode code,
                        const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace footfall
