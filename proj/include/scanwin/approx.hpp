#pragma once

#include <string>
#include <variant>
#include <vector>

#include "scanwin/algebra.hpp"
#include "scanwin/solver.hpp"

namespace scanwin {

/// epsilon(w,s,p) = P(tau_(w,s) > w): the probability of fewer than s
/// successes in w trials, sum_{i<s} C(w,i) (1-p)^(w-i) p^i.
double epsilon(int w, int s, double p);

/// Total infinite-window ending-pattern mass on patterns longer than w:
/// fewer than s-1 successes in the w-1 trials after the first success.
double infinite_tail_mass(int w, int s, double p);

/// Relative gap (E(tau_(w,s)) - s/p) / E(tau_(w,s)).
double relative_gap(const WindowStats& stats);

/// Sum over Omega(inf,s) of |P(X_(w,s)=x) - P(X_(inf,s)=x)|; patterns
/// longer than w contribute their infinite-window mass in closed form.
double distribution_l1_distance(const WindowStats& stats);

enum class BoundKind { kExpectationRelative, kDistributionL1 };
std::string bound_kind_name(BoundKind kind);

enum class ThresholdKind { kWStar, kPStar, kTrueWStar, kTruePStar };
std::string threshold_kind_name(ThresholdKind kind);
ThresholdKind parse_threshold_kind(const std::string& name);

struct ApproxReport {
  ThresholdKind kind = ThresholdKind::kWStar;
  int s = 0;
  /// Fixed partner parameter: p for w-thresholds, w for p-thresholds.
  std::variant<int, double> fixed;
  double delta = 0.0;
  /// w for w-thresholds, p for p-thresholds.
  std::variant<int, double> threshold;
  /// epsilon evaluated at the threshold.
  double epsilon = 0.0;
  BoundKind bound_kind = BoundKind::kExpectationRelative;
  /// 2 * epsilon: bound on the ending-distribution L1 distance.
  double distribution_l1_bound = 0.0;
  /// Exact relative gap at the threshold (true_* kinds only).
  std::optional<double> relative_gap;
};

/// Smallest w >= s with epsilon(w,s,p) < delta, by linear scan.
int w_star(int s, double p, double delta, int max_w = 10'000'000);

/// Root of epsilon(w,s,p) = delta by bisection on [1e-12, 1-1e-12] to 1e-9.
/// Throws Error(kNoRoot) if epsilon stays >= delta over the whole bracket.
double p_star(int w, int s, double delta);

/// Smallest w >= s whose exact relative gap is below delta (solver route).
int true_w_star(int s, double p, double delta, const SolverOptions& options = {});

/// Infimum p whose exact relative gap is below delta, by bisection on the
/// bracket [lower, p_star(w,s,delta)].
double true_p_star(int w, int s, double delta, const SolverOptions& options = {},
                   double lower = 1e-3);

ApproxReport threshold_report(ThresholdKind kind, int s, std::variant<int, double> fixed,
                              double delta, const SolverOptions& options = {});

/// Small-p limit 1/(|Omega(w,s)| p^s).
double asymptotic_expectation(int w, int s, double p);

/// Small-p limit: uniform over Omega(w,s) in canonical order.
std::vector<double> asymptotic_distribution(int w, int s,
                                            std::size_t cap = kDefaultPatternCap);

}  // namespace scanwin
