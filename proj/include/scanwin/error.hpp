#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scanwin {

enum class ErrorKind {
  kInvalidArgument,
  kCapExceeded,
  kSingularMatrix,
  kNegativeVariance,
  kMissingVariance,
  kNoRoot,
  kSmallProbability,
  kBlowupGuard,
  kMonotonicityViolation,
  kUsage,
};

/// Stable machine-readable name, used in CLI error JSON.
std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scanwin
