#include "scanwin/closed_forms.hpp"

#include <cmath>

#include <fmt/format.h>

#include "scanwin/error.hpp"

namespace scanwin {

namespace {

void require_s2_window(int w) {
  if (w < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("s=2 closed forms need w >= 2 (got {})", w));
  }
}

void require_positive_s(int s) {
  if (s < 1) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("s must be >= 1 (got {})", s));
  }
}

double log_binomial(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double pow_failure(double p, long long n) noexcept {
  if (n > 1000) return std::exp(static_cast<double>(n) * std::log1p(-p));
  return std::pow(1.0 - p, static_cast<double>(n));
}

double pmf_infinite(long long n, int s, const TrialProbability& prob) {
  require_positive_s(s);
  if (n < s) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("pmf_infinite needs n >= s (n={}, s={})", n, s));
  }
  const double log_term = log_binomial(n - 1, s - 1) +
                          static_cast<double>(n - s) * std::log1p(-prob.p()) +
                          static_cast<double>(s) * std::log(prob.p());
  return std::exp(log_term);
}

double expectation_infinite(int s, double p) {
  require_positive_s(s);
  return static_cast<double>(s) / p;
}

double variance_infinite(int s, double p) {
  require_positive_s(s);
  return static_cast<double>(s) * (1.0 - p) / (p * p);
}

InfiniteWindowStats infinite_window_stats(int s, double p) {
  return {s, p, expectation_infinite(s, p), variance_infinite(s, p)};
}

double pattern_prob_infinite(const EndingPattern& x, const TrialProbability& prob) {
  const int s = x.ones();
  return pow_failure(prob.p(), x.length() - s) * std::pow(prob.p(), s - 1);
}

double expectation_s2(int w, const TrialProbability& prob) {
  require_s2_window(w);
  const double p = prob.p();
  return 1.0 / p + 1.0 / (p * (1.0 - pow_failure(p, w - 1)));
}

double variance_s2(int w, const TrialProbability& prob) {
  require_s2_window(w);
  const double p = prob.p();
  const double q = prob.q();
  const double wd = static_cast<double>(w);
  const double q_w = pow_failure(p, w);
  const double q_w1 = pow_failure(p, w - 1);
  const double q_w2 = pow_failure(p, w - 2);

  const double mean_t = 1.0 / p;
  const double var_t = q / (p * p);
  const double succ = 1.0 - q_w1;  // window closes on a second success
  const double mean_m = 1.0 / succ;
  const double var_m = q_w1 / (succ * succ);

  const double mean_l = (1.0 - q_w - wd * p * q_w1) / (p * succ);
  // d^2/dq^2 of (1 - q^w)/(1 - q), expanded by the product rule.
  const double second_derivative = -wd * (wd - 1.0) * q_w2 / p -
                                   2.0 * wd * q_w1 / (p * p) +
                                   2.0 * (1.0 - q_w) / (p * p * p);
  const double var_l = p * q / succ * second_derivative + mean_l - mean_l * mean_l;

  const double gap = wd - 1.0;
  return mean_m * var_t + var_m * mean_t * mean_t + 2.0 * gap * var_m * mean_t +
         gap * gap * var_m + var_l;
}

std::vector<double> pattern_dist_s2(int w, const TrialProbability& prob) {
  require_s2_window(w);
  const double p = prob.p();
  const double norm = 1.0 - pow_failure(p, w - 1);
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(w - 1));
  for (int n = 1; n <= w - 1; ++n) {
    dist.push_back(pow_failure(p, n - 1) * p / norm);
  }
  return dist;
}

}  // namespace scanwin
