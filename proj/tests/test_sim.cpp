#include "doctest.h"

#include <cmath>

#include "scanwin/closed_forms.hpp"
#include "scanwin/error.hpp"
#include "scanwin/sim.hpp"
#include "scanwin/solver.hpp"

using namespace scanwin;

TEST_CASE("p = 1 is deterministic") {
  for (int s = 1; s <= 5; ++s) {
    auto engine = replication_engine(7, 0);
    const auto sample = run_one(s + 2, s, 1.0, engine);
    CHECK(sample.tau == static_cast<std::uint64_t>(s));
    CHECK(sample.pattern == EndingPattern::run(s));
  }
}

TEST_CASE("same seed, same batch, regardless of threads") {
  SimConfig config{6, 3, 0.3, 2000, 42, 1, false};
  const auto a = run_batch(config);
  config.threads = 4;
  const auto b = run_batch(config);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].tau == b.samples[i].tau);
    CHECK(a.samples[i].pattern == b.samples[i].pattern);
  }
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  config.seed = 43;
  CHECK(run_batch(config).mean != a.mean);
}

TEST_CASE("recorded patterns are valid and windows are never early") {
  SimConfig config{7, 3, 0.35, 3000, 5, 1, true};
  const auto result = run_batch(config);
  for (const auto& sample : result.samples) {
    CHECK(sample.pattern.ones() == 3);
    CHECK(sample.pattern.length() <= 7);
    CHECK(sample.pattern.bits().front() == 1);
    CHECK(sample.pattern.bits().back() == 1);
    CHECK(sample.tau >= static_cast<std::uint64_t>(sample.pattern.length()));
  }
}

TEST_CASE("w = 2, s = 2 waits for two consecutive successes") {
  const double p = 0.4;
  SimConfig config{2, 2, p, 100000, 9, 2, false};
  const auto r = run_batch(config);
  CHECK(std::abs(r.mean - (1 / p + 1 / (p * p))) < 4 * r.mean_standard_error);
}

TEST_CASE("w = 4, s = 2 pattern frequencies") {
  SimConfig config{4, 2, 0.5, 100000, 11, 2, false};
  const auto r = run_batch(config);
  const double expected[] = {4.0 / 7, 2.0 / 7, 1.0 / 7};
  const char* names[] = {"11", "101", "1001"};
  for (int i = 0; i < 3; ++i) {
    const auto& tally = r.patterns.at(EndingPattern::from_string(names[i]));
    const double se = std::sqrt(expected[i] * (1 - expected[i]) / 100000.0);
    CHECK(std::abs(tally.frequency - expected[i]) < 4 * se);
  }
}

TEST_CASE("mean and variance against the solver") {
  SimConfig config{8, 3, 0.4, 100000, 2024, 2, false};
  const auto r = run_batch(config);
  const auto st = solve_second_moment(8, 3, TrialProbability(0.4));
  CHECK(std::abs(r.mean - st.expectation) < 4 * r.mean_standard_error);
  CHECK(std::abs(r.variance - *st.variance) < 5 * r.variance_standard_error);

  SimConfig run_only{4, 4, 0.5, 100000, 77, 2, false};
  const auto rr = run_batch(run_only);
  const auto sr = solve_second_moment(4, 4, TrialProbability(0.5));
  CHECK(std::abs(rr.variance - *sr.variance) < 5 * rr.variance_standard_error);
}

TEST_CASE("the run pattern alone bounds the mean") {
  // Waiting for the all-ones run is one way to finish, so its expected time
  // (x*x) bounds E(tau) from above.
  SimConfig config{6, 3, 0.3, 20000, 3, 1, false};
  const auto r = run_batch(config);
  const double p = 0.3;
  const double run_time = 1 / p + 1 / (p * p) + 1 / (p * p * p);
  CHECK(r.mean <= run_time + 5 * r.mean_standard_error);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(run_batch(SimConfig{3, 4, 0.5, 10, 0, 1, false}), Error);
  CHECK_THROWS_AS(run_batch(SimConfig{3, 2, 0.0, 10, 0, 1, false}), Error);
  CHECK_THROWS_AS(run_batch(SimConfig{3, 2, 1.5, 10, 0, 1, false}), Error);
  CHECK_THROWS_AS(run_batch(SimConfig{3, 2, 0.5, 0, 0, 1, false}), Error);
}
