#pragma once

#include <vector>

#include "scanwin/algebra.hpp"
#include "scanwin/patterns.hpp"

namespace scanwin {

// Exact results for an unbounded window (negative binomial waiting time)
// and for s = 2 at any finite window.

struct InfiniteWindowStats {
  int s = 0;
  double p = 0.0;
  double expectation = 0.0;
  double variance = 0.0;
};

/// (1-p)^n, switching to exp(n log1p(-p)) for n > 1000.
double pow_failure(double p, long long n) noexcept;

/// P(tau_(inf,s) = n) = C(n-1, s-1) (1-p)^(n-s) p^s. Throws for n < s.
double pmf_infinite(long long n, int s, const TrialProbability& prob);

double expectation_infinite(int s, double p);
double variance_infinite(int s, double p);
InfiniteWindowStats infinite_window_stats(int s, double p);

/// P(X_(inf,s) = x) = (1-p)^(l-s) p^(s-1); depends only on the length.
double pattern_prob_infinite(const EndingPattern& x, const TrialProbability& prob);

/// E(tau_(w,2)) = 1/p + 1/(p (1 - (1-p)^(w-1))).
double expectation_s2(int w, const TrialProbability& prob);

/// Var(tau_(w,2)) from the decomposition tau = sum_{j<=M} T_j + (M-1)(w-1) + L
/// with M, T_j, L independent.
double variance_s2(int w, const TrialProbability& prob);

/// P(L = n) for the gap n = 1..w-1 between the two successes; entry n-1
/// is the probability of the length-(n+1) pattern, which is also its
/// canonical index in Omega(w,2).
std::vector<double> pattern_dist_s2(int w, const TrialProbability& prob);

}  // namespace scanwin
