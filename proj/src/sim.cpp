#include "scanwin/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <optional>

#include <fmt/format.h>

#include "scanwin/error.hpp"
#include "scanwin/parallel.hpp"

namespace scanwin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 53-bit uniform in [0,1); independent of the standard library's
// distribution implementations.
double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void validate(int w, int s, double p) {
  if (s < 1 || w < s) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("need 1 <= s <= w (w={}, s={})", w, s));
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("simulation needs 0 < p <= 1, got {}", p));
  }
}

void verify_history(const std::vector<Bit>& history, int w, int s) {
  const auto n = history.size();
  const auto window = static_cast<std::size_t>(w);
  int count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    count += history[t];
    if (t >= window) count -= history[t - window];
    const bool last = t + 1 == n;
    if (!last && count >= s) {
      throw std::logic_error(fmt::format(
          "window ending at trial {} already held {} successes", t + 1, count));
    }
    if (last && count != s) {
      throw std::logic_error(
          fmt::format("final window holds {} successes, expected {}", count, s));
    }
  }
}

}  // namespace

std::vector<double> SimResult::frequencies(const PatternSet& set) const {
  std::vector<double> out(set.size(), 0.0);
  for (const auto& [pattern, tally] : patterns) {
    if (auto idx = set.index_of(pattern)) out[*idx] = tally.frequency;
  }
  return out;
}

std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                    static_cast<std::uint32_t>(splitmix64(index ^ 0xD1B54A32D192ED03ULL)),
                    static_cast<std::uint32_t>(splitmix64(index ^ 0xD1B54A32D192ED03ULL) >> 32)};
  return std::mt19937_64(seq);
}

SimSample run_one(int w, int s, double p, std::mt19937_64& engine, bool verify_windows) {
  validate(w, s, p);
  const auto window = static_cast<std::size_t>(w);
  std::vector<Bit> ring(window, 0);
  std::vector<Bit> history;
  int in_window = 0;
  for (std::uint64_t t = 1; t <= kSimIterationCap; ++t) {
    const std::size_t slot = static_cast<std::size_t>((t - 1) % window);
    const Bit z = uniform01(engine) < p ? 1 : 0;
    in_window += z - ring[slot];  // slot held trial t - w
    ring[slot] = z;
    if (verify_windows) history.push_back(z);
    if (in_window < s) continue;

    // Walk the window oldest-first; it holds exactly s successes.
    const std::size_t filled = std::min<std::uint64_t>(t, window);
    std::vector<Bit> bits;
    bits.reserve(filled);
    for (std::size_t back = filled; back-- > 0;) {
      const std::size_t idx = static_cast<std::size_t>((t - 1 - back) % window);
      if (bits.empty() && ring[idx] == 0) continue;
      bits.push_back(ring[idx]);
    }
    if (verify_windows) verify_history(history, w, s);
    return SimSample{t, EndingPattern(std::move(bits))};
  }
  throw Error(ErrorKind::kCapExceeded,
              fmt::format("no ending pattern within {} trials", kSimIterationCap));
}

SimResult run_batch(const SimConfig& config) {
  validate(config.w, config.s, config.p);
  if (config.runs < 1) {
    throw Error(ErrorKind::kInvalidArgument, "runs must be >= 1");
  }
  SimResult result;
  result.config = config;
  const std::uint64_t n = config.runs;
  std::vector<std::optional<SimSample>> slots(n);

  parallel_for(static_cast<std::size_t>(n), config.threads, [&](std::size_t i) {
    auto engine = replication_engine(config.seed, i);
    slots[i] = run_one(config.w, config.s, config.p, engine, config.verify_windows);
  });

  result.samples.reserve(n);
  for (auto& slot : slots) result.samples.push_back(std::move(*slot));

  const double nd = static_cast<double>(n);
  double sum = 0.0;
  for (const auto& sample : result.samples) {
    sum += static_cast<double>(sample.tau);
    ++result.patterns[sample.pattern].count;
  }
  result.mean = sum / nd;
  double m2 = 0.0;
  double m4 = 0.0;
  for (const auto& sample : result.samples) {
    const double d = static_cast<double>(sample.tau) - result.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  if (n > 1) {
    result.variance = m2 / (nd - 1.0);
    result.mean_standard_error = std::sqrt(result.variance / nd);
    const double fourth = m4 / nd;
    const double var_of_var =
        (fourth - result.variance * result.variance * (nd - 3.0) / (nd - 1.0)) / nd;
    result.variance_standard_error = std::sqrt(std::max(var_of_var, 0.0));
  }
  for (auto& [pattern, tally] : result.patterns) {
    tally.frequency = static_cast<double>(tally.count) / nd;
    tally.standard_error = std::sqrt(tally.frequency * (1.0 - tally.frequency) / nd);
  }
  return result;
}

}  // namespace scanwin
