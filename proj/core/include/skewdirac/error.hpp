#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewdirac {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFinite,
  kNotHermitian,
  kNotPositiveDefinite,
  kNoUniqueSolution,
  kRiccatiFailure,
  kNonConvergence,
  kPole,
  kSingular,
  kPrecondition,
  kConsistency,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library is an Error carrying a code, so callers
// (the CLI in particular) can map failures onto stable exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace skewdirac
