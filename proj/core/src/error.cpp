#include "skewdirac/error.hpp"

namespace skewdirac {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNonFinite: return "non-finite input";
    case ErrorCode::kNotHermitian: return "not Hermitian";
    case ErrorCode::kNotPositiveDefinite: return "not positive definite";
    case ErrorCode::kNoUniqueSolution: return "no unique solution";
    case ErrorCode::kRiccatiFailure: return "Riccati failure";
    case ErrorCode::kNonConvergence: return "iteration did not converge";
    case ErrorCode::kPole: return "pole";
    case ErrorCode::kSingular: return "singular matrix";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kConsistency: return "internal consistency check failed";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace skewdirac
