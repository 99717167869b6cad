#include "doctest.h"

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "scanwin/approx.hpp"
#include "scanwin/closed_forms.hpp"
#include "scanwin/error.hpp"
#include "scanwin/solver.hpp"

using namespace scanwin;
using doctest::Approx;

TEST_CASE("negative binomial moments") {
  CHECK(expectation_infinite(4, 0.5) == 8.0);
  CHECK(variance_infinite(4, 0.5) == 8.0);
  CHECK(variance_infinite(3, 0.25) == 36.0);
  CHECK(expectation_infinite(1, 1.0) == 1.0);
  const auto st = infinite_window_stats(4, 0.5);
  CHECK(st.expectation == 8.0);
  CHECK(st.variance == 8.0);
}

TEST_CASE("negative binomial pmf") {
  const TrialProbability half(0.5);
  CHECK(pmf_infinite(3, 2, half) == Approx(0.25).epsilon(1e-14));
  for (int s = 1; s <= 5; ++s) {
    const TrialProbability prob(0.3);
    CHECK(pmf_infinite(s, s, prob) == Approx(std::pow(0.3, s)).epsilon(1e-13));
    double total = 0.0;
    for (long long n = s; n <= 2000; ++n) total += pmf_infinite(n, s, prob);
    CHECK(total == Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pmf_infinite(2, 3, half), Error);
}

TEST_CASE("pmf up to w sums to 1 - epsilon") {
  for (int s = 1; s <= 4; ++s) {
    for (int w = s; w <= 15; ++w) {
      for (double p : {0.1, 0.5, 0.9}) {
        double head = 0.0;
        for (int n = s; n <= w; ++n) head += pmf_infinite(n, s, TrialProbability(p));
        CHECK(head == Approx(1.0 - epsilon(w, s, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("infinite-window pattern probabilities") {
  const TrialProbability half(0.5);
  CHECK(pattern_prob_infinite(EndingPattern::from_string("11"), TrialProbability(0.3)) ==
        Approx(0.3).epsilon(1e-14));
  CHECK(pattern_prob_infinite(EndingPattern::from_string("101"), half) == 0.25);
  // Sum over every pattern with s = 3 of length <= 60 approaches 1.
  const TrialProbability prob(0.4);
  double total = 0.0;
  for (int l = 3; l <= 60; ++l) {
    const double per = pattern_prob_infinite(EndingPattern::from_string(
                                                 "1" + std::string(static_cast<std::size_t>(l - 3), '0') + "11"),
                                             prob);
    total += per * static_cast<double>(l - 2);  // C(l-2, 1) patterns of length l
  }
  CHECK(total == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pow_failure switches to the log form for long runs") {
  CHECK(pow_failure(0.5, 3) == 0.125);
  CHECK(pow_failure(0.01, 5000) == Approx(std::exp(5000 * std::log1p(-0.01))).epsilon(1e-13));
  CHECK(pow_failure(0.01, 1000) == Approx(std::pow(0.99, 1000)).epsilon(1e-13));
}

TEST_CASE("s = 2 expectation") {
  for (double p : {0.1, 0.5, 0.9}) {
    const TrialProbability prob(p);
    CHECK(expectation_s2(2, prob) == Approx(1 / p + 1 / (p * p)).epsilon(1e-13));
    double previous = std::numeric_limits<double>::infinity();
    // Strict while (1-p)^(w-1) is still resolvable next to 1.
    for (int w = 2; std::pow(1 - p, w - 1) > 1e-12; ++w) {
      const double e = expectation_s2(w, prob);
      CHECK(e < previous);
      previous = e;
    }
  }
  CHECK(expectation_s2(400, TrialProbability(0.5)) == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("s = 2 variance against the Markov chain") {
  for (int w = 2; w <= 11; ++w) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      CAPTURE(w);
      CAPTURE(p);
      const auto chain = oracle::markov_chain(w, 2, p);
      const TrialProbability prob(p);
      CHECK(expectation_s2(w, prob) == Approx(chain.expectation).epsilon(1e-10));
      CHECK(variance_s2(w, prob) == Approx(chain.variance).epsilon(1e-8));
    }
  }
  CHECK(variance_s2(400, TrialProbability(0.5)) == Approx(4.0).epsilon(1e-10));
}

TEST_CASE("s = 2 gap distribution") {
  CHECK(pattern_dist_s2(2, TrialProbability(0.37)) == std::vector<double>{1.0});
  const auto d = pattern_dist_s2(4, TrialProbability(0.5));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == Approx(4.0 / 7).epsilon(1e-14));
  CHECK(d[1] == Approx(2.0 / 7).epsilon(1e-14));
  CHECK(d[2] == Approx(1.0 / 7).epsilon(1e-14));
  const auto solved = solve_first_moment(6, 2, TrialProbability(0.3));
  const auto closed = pattern_dist_s2(6, TrialProbability(0.3));
  for (std::size_t i = 0; i < closed.size(); ++i) {
    CHECK(closed[i] == Approx(solved.distribution[i]).epsilon(1e-10));
  }
}
