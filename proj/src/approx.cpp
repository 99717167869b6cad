#include "scanwin/approx.hpp"

#include <cmath>

#include <fmt/format.h>

#include "scanwin/bisect.hpp"
#include "scanwin/closed_forms.hpp"
#include "scanwin/error.hpp"

namespace scanwin {

namespace {

constexpr double kPLow = 1e-12;
constexpr double kPHigh = 1.0 - 1e-12;
constexpr double kPTolerance = 1e-9;

void require_window(int w, int s) {
  if (s < 1 || w < s) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("need 1 <= s <= w (w={}, s={})", w, s));
  }
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("delta must lie in (0,1), got {}", delta));
  }
}

// P(Binomial(n, p) < k), summed in log space.
double binomial_lower_tail(int n, int k, double p) {
  if (k <= 0) return 0.0;
  if (k > n) return 1.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_n = std::lgamma(n + 1.0);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const double log_term = lg_n - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                            (n - i) * log_q + i * log_p;
    total += std::exp(log_term);
  }
  return std::min(total, 1.0);
}

}  // namespace

double epsilon(int w, int s, double p) {
  require_window(w, s);
  TrialProbability{p};
  return binomial_lower_tail(w, s, p);
}

double infinite_tail_mass(int w, int s, double p) {
  require_window(w, s);
  TrialProbability{p};
  return binomial_lower_tail(w - 1, s - 1, p);
}

double relative_gap(const WindowStats& stats) {
  return (stats.expectation - expectation_infinite(stats.s, stats.p)) / stats.expectation;
}

double distribution_l1_distance(const WindowStats& stats) {
  const TrialProbability prob(stats.p);
  double total = 0.0;
  for (std::size_t i = 0; i < stats.patterns.size(); ++i) {
    total += std::abs(stats.distribution[i] - pattern_prob_infinite(stats.patterns[i], prob));
  }
  return total + infinite_tail_mass(stats.w, stats.s, stats.p);
}

std::string bound_kind_name(BoundKind kind) {
  return kind == BoundKind::kExpectationRelative ? "expectation-relative"
                                                  : "distribution-L1";
}

std::string threshold_kind_name(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::kWStar: return "w_star";
    case ThresholdKind::kPStar: return "p_star";
    case ThresholdKind::kTrueWStar: return "true_w_star";
    case ThresholdKind::kTruePStar: return "true_p_star";
  }
  return "unknown";
}

ThresholdKind parse_threshold_kind(const std::string& name) {
  for (auto kind : {ThresholdKind::kWStar, ThresholdKind::kPStar, ThresholdKind::kTrueWStar,
                    ThresholdKind::kTruePStar}) {
    if (threshold_kind_name(kind) == name) return kind;
  }
  throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown threshold kind '{}'", name));
}

int w_star(int s, double p, double delta, int max_w) {
  require_delta(delta);
  require_window(s, s);
  for (int w = s; w <= max_w; ++w) {
    if (epsilon(w, s, p) < delta) return w;
  }
  throw Error(ErrorKind::kCapExceeded,
              fmt::format("w_star scan passed w={} without epsilon < {}", max_w, delta));
}

double p_star(int w, int s, double delta) {
  require_window(w, s);
  require_delta(delta);
  if (epsilon(w, s, kPHigh) >= delta) {
    throw Error(ErrorKind::kNoRoot,
                fmt::format("epsilon({},{},p) >= {} for every p < 1-1e-12", w, s, delta));
  }
  if (epsilon(w, s, kPLow) < delta) {
    throw Error(ErrorKind::kNoRoot,
                fmt::format("epsilon({},{},p) < {} already at p=1e-12", w, s, delta));
  }
  const auto [lo, hi] = bisect_boundary(kPLow, kPHigh, kPTolerance,
                                        [&](double p) { return epsilon(w, s, p) >= delta; });
  return lo + (hi - lo) / 2.0;
}

int true_w_star(int s, double p, double delta, const SolverOptions& options) {
  require_delta(delta);
  const TrialProbability prob(p);
  // The epsilon bound guarantees the exact gap is below delta by w_star.
  const int upper = w_star(s, p, delta);
  for (int w = s; w < upper; ++w) {
    if (relative_gap(solve_first_moment(w, s, prob, options)) < delta) return w;
  }
  return upper;
}

double true_p_star(int w, int s, double delta, const SolverOptions& options, double lower) {
  require_window(w, s);
  require_delta(delta);
  auto gap_at = [&](double p) {
    return relative_gap(solve_first_moment(w, s, TrialProbability(p), options));
  };
  const double upper = p_star(w, s, delta);
  if (gap_at(lower) < delta) {
    throw Error(ErrorKind::kNoRoot,
                fmt::format("relative gap for (w={}, s={}) is already below {} at p={}", w,
                            s, delta, lower));
  }
  if (upper <= lower) return upper;
  const auto [lo, hi] = bisect_boundary(lower, upper, kPTolerance,
                                        [&](double p) { return gap_at(p) >= delta; });
  return lo + (hi - lo) / 2.0;
}

ApproxReport threshold_report(ThresholdKind kind, int s, std::variant<int, double> fixed,
                              double delta, const SolverOptions& options) {
  ApproxReport report;
  report.kind = kind;
  report.s = s;
  report.fixed = fixed;
  report.delta = delta;
  const bool w_kind = kind == ThresholdKind::kWStar || kind == ThresholdKind::kTrueWStar;
  if (w_kind != std::holds_alternative<double>(fixed)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("{} needs a fixed {}", threshold_kind_name(kind),
                            w_kind ? "p" : "w"));
  }
  int w = 0;
  double p = 0.0;
  switch (kind) {
    case ThresholdKind::kWStar:
      p = std::get<double>(fixed);
      w = w_star(s, p, delta);
      break;
    case ThresholdKind::kTrueWStar:
      p = std::get<double>(fixed);
      w = true_w_star(s, p, delta, options);
      break;
    case ThresholdKind::kPStar:
      w = std::get<int>(fixed);
      p = p_star(w, s, delta);
      break;
    case ThresholdKind::kTruePStar:
      w = std::get<int>(fixed);
      p = true_p_star(w, s, delta, options);
      break;
  }
  if (w_kind) {
    report.threshold = w;
  } else {
    report.threshold = p;
  }
  report.epsilon = epsilon(w, s, p);
  report.distribution_l1_bound = 2.0 * report.epsilon;
  if (kind == ThresholdKind::kTrueWStar || kind == ThresholdKind::kTruePStar) {
    report.relative_gap = relative_gap(solve_first_moment(w, s, TrialProbability(p), options));
  }
  return report;
}

double asymptotic_expectation(int w, int s, double p) {
  require_window(w, s);
  const double count = static_cast<double>(pattern_count(w, s));
  return 1.0 / (count * std::pow(p, s));
}

std::vector<double> asymptotic_distribution(int w, int s, std::size_t cap) {
  require_window(w, s);
  const std::size_t count = pattern_count(w, s);
  if (count > cap) {
    throw Error(ErrorKind::kCapExceeded,
                fmt::format("|Omega({},{})| = {} exceeds the pattern cap {}", w, s, count, cap));
  }
  return std::vector<double>(count, 1.0 / static_cast<double>(count));
}

}  // namespace scanwin
