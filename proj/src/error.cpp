#include "scanwin/error.hpp"

namespace scanwin {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kCapExceeded: return "cap_exceeded";
    case ErrorKind::kSingularMatrix: return "singular_matrix";
    case ErrorKind::kNegativeVariance: return "negative_variance";
    case ErrorKind::kMissingVariance: return "missing_variance";
    case ErrorKind::kNoRoot: return "no_root";
    case ErrorKind::kSmallProbability: return "small_probability";
    case ErrorKind::kBlowupGuard: return "blowup_guard";
    case ErrorKind::kMonotonicityViolation: return "monotonicity_violation";
    case ErrorKind::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace scanwin
