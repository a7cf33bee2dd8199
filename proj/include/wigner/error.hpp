#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wigner {

enum class ErrorCode {
  kDimensionMismatch,
  kUnsupportedNorm,
  kAlreadyReal,
  kInvalidArgument,
  kNotIsometric,
  kOutOfDomain,
  kMissingZeroImage,
  kNeedsEvaluableMap,
  kRealFieldUnsupported,
  kMagnitudeMismatch,
  kInconsistentCycle,
  kTooManyNodes,
  kRankDeficient,
  kNotPhaseEquivalent,
  kSchema,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by propagate_signs; the offending edge is kept for diagnostics.
class InconsistentCycle : public Error {
 public:
  InconsistentCycle(std::size_t i, std::size_t j)
      : Error(ErrorCode::kInconsistentCycle,
              "edge (" + std::to_string(i) + ", " + std::to_string(j) +
                  ") contradicts the propagated signs"),
        i_(i),
        j_(j) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

// Input document does not match a published schema. pointer is the JSON
// pointer of the offending value (or of the object missing a member).
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string pointer, const std::string& what)
      : Error(ErrorCode::kSchema, (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace wigner
