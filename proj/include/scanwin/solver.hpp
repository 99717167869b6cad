#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scanwin/algebra.hpp"
#include "scanwin/patterns.hpp"

namespace scanwin {

struct SolverOptions {
  std::size_t pattern_cap = kDefaultPatternCap;
  /// Below this p the systems are badly conditioned; callers should use the
  /// small-p asymptotics instead (see approx.hpp).
  double small_p_threshold = 1e-4;
  /// Estimated 1-norm condition numbers above this add a warning.
  double condition_warning = 1e12;
  /// Variances below -tolerance * E(tau^2) are reported as errors; smaller
  /// negative values are round-off and clamp to zero.
  double variance_tolerance = 1e-6;
};

/// Exact statistics of the waiting time tau_(w,s) and the ending pattern
/// X_(w,s) for a finite window.
struct WindowStats {
  int w = 0;
  int s = 0;
  double p = 0.0;
  double expectation = 0.0;
  std::optional<double> second_moment;
  std::optional<double> variance;
  /// P(X = x) for every x of `patterns`, in canonical order.
  std::vector<double> distribution;
  PatternSet patterns;
  /// Estimated 1-norm condition number of the bordered first-moment matrix.
  double condition_estimate = 0.0;
  std::vector<std::string> warnings;
};

/// Solves the bordered system A v = e_1, where A has first row (0,1,...,1),
/// first column (0,-1,...,-1) and interior entries x_i * x_j, giving
/// E(tau) = v_1 and the ending-pattern distribution v_2..v_{N+1}.
///
/// Throws Error(kSmallProbability) for p below options.small_p_threshold,
/// Error(kSingularMatrix) if LU fails, and propagates pattern cap errors.
WindowStats solve_first_moment(int w, int s, const TrialProbability& prob,
                               const SolverOptions& options = {});

/// Fills second_moment and variance of `first` (which must come from
/// solve_first_moment). Solves W u = 1 and W v = 1 - N u with one LU of W,
/// where W holds star products and N dagger products of the patterns.
WindowStats solve_second_moment(WindowStats first, const SolverOptions& options = {});

/// First and second moment in one call.
WindowStats solve_second_moment(int w, int s, const TrialProbability& prob,
                                const SolverOptions& options = {});

/// sqrt(variance). Throws Error(kMissingVariance) if it was not computed.
double std_dev(const WindowStats& stats);

}  // namespace scanwin
