#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "scanwin/patterns.hpp"

namespace scanwin {

/// Hard limit on trials in a single replication.
inline constexpr std::uint64_t kSimIterationCap = 1'000'000'000ULL;

struct SimConfig {
  int w = 0;
  int s = 0;
  double p = 0.0;  // 0 < p <= 1
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  /// Worker threads; results never depend on it.
  unsigned threads = 1;
  /// Re-scan every generated prefix to check that no earlier window held s
  /// successes. Quadratic; for tests only.
  bool verify_windows = false;
};

struct SimSample {
  std::uint64_t tau = 0;
  EndingPattern pattern;
};

struct PatternTally {
  std::uint64_t count = 0;
  double frequency = 0.0;
  /// sqrt(f (1 - f) / runs).
  double standard_error = 0.0;
};

struct SimResult {
  SimConfig config;
  std::vector<SimSample> samples;  // replication-index order
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double mean_standard_error = 0.0;
  /// Large-sample standard error of the unbiased variance estimate.
  double variance_standard_error = 0.0;
  std::map<EndingPattern, PatternTally, CanonicalLess> patterns;

  /// Empirical frequencies aligned with `set` (zero where unseen).
  std::vector<double> frequencies(const PatternSet& set) const;
};

/// The generator for replication `index` of a batch seeded with `seed`.
std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t index);

/// Generates Bernoulli(p) trials until the last w trials hold s successes
/// for the first time. Returns that time and the realized ending pattern
/// (oldest in-window success through the current trial).
SimSample run_one(int w, int s, double p, std::mt19937_64& engine,
                  bool verify_windows = false);

/// Runs config.runs independent replications; deterministic for a seed.
SimResult run_batch(const SimConfig& config);

}  // namespace scanwin
