#pragma once

// Reference implementations used only by the tests. Each one computes the
// same quantity as a library routine by an unrelated method.

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Every binary string of length s..w with s ones that starts and ends with
/// '1', found by testing all 2^l strings, in (length, binary value) order.
inline std::vector<std::string> brute_force_patterns(int w, int s) {
  std::vector<std::string> out;
  for (int l = s; l <= w; ++l) {
    for (unsigned long v = 0; v < (1ul << l); ++v) {
      std::string text;
      for (int i = l - 1; i >= 0; --i) text.push_back((v >> i) & 1ul ? '1' : '0');
      if (text.front() != '1' || text.back() != '1') continue;
      if (std::count(text.begin(), text.end(), '1') != s) continue;
      out.push_back(text);
    }
  }
  return out;
}

/// Literal transcription of the overlap sum on strings: the length-j prefix
/// of x against the length-j suffix of y, weighted by weight(j).
template <typename Weight>
double overlap_sum(const std::string& x, const std::string& y, double p, Weight weight) {
  double total = 0.0;
  for (std::size_t j = 1; j <= std::min(x.size(), y.size()); ++j) {
    if (x.substr(0, j) != y.substr(y.size() - j)) continue;
    const auto ones = static_cast<double>(std::count(x.begin(), x.begin() + j, '1'));
    const auto zeros = static_cast<double>(j) - ones;
    total += weight(j) * std::pow(p, -ones) * std::pow(1.0 - p, -zeros);
  }
  return total;
}

inline double star(const std::string& x, const std::string& y, double p) {
  return overlap_sum(x, y, p, [](std::size_t) { return 1.0; });
}

inline double dagger(const std::string& x, const std::string& y, double p) {
  return overlap_sum(x, y, p, [](std::size_t j) { return 1.0 - static_cast<double>(j); });
}

/// Exact moments of tau and the ending-pattern law from the absorbing
/// Markov chain whose state is the last w-1 trials. Independent of the
/// overlap algebra; practical for w <= 12.
struct ChainResult {
  double expectation = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  std::map<std::string, double> patterns;
};

inline ChainResult markov_chain(int w, int s, double p) {
  const int width = w - 1;
  const unsigned full = 1u << width;
  // State bit i is the trial i steps before the most recent one.
  std::vector<unsigned> states;
  std::vector<int> index(full, -1);
  for (unsigned v = 0; v < full; ++v) {
    if (std::popcount(v) < s) {
      index[v] = static_cast<int>(states.size());
      states.push_back(v);
    }
  }
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd transient = Eigen::MatrixXd::Zero(n, n);
  std::map<std::string, int> pattern_col;
  std::vector<std::vector<std::pair<int, double>>> exits(states.size());

  for (std::size_t k = 0; k < states.size(); ++k) {
    for (int z = 0; z <= 1; ++z) {
      const double prob = z ? p : 1.0 - p;
      // Window of w trials: state bits shifted up, new trial in bit 0.
      const unsigned window = (states[k] << 1) | static_cast<unsigned>(z);
      if (std::popcount(window) == s) {
        int oldest = w - 1;
        while (!((window >> oldest) & 1u)) --oldest;
        std::string text;
        for (int i = oldest; i >= 0; --i) text.push_back((window >> i) & 1u ? '1' : '0');
        auto [it, inserted] = pattern_col.emplace(text, static_cast<int>(pattern_col.size()));
        exits[k].emplace_back(it->second, prob);
      } else {
        const unsigned next = window & (full - 1);
        transient(static_cast<Eigen::Index>(k), index[next]) += prob;
      }
    }
  }

  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - transient;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd t = lu.solve(Eigen::VectorXd::Ones(n));
  // E(tau^2 | start) = ((2N - I) t)
  const Eigen::VectorXd nt = lu.solve(t);
  const Eigen::VectorXd m2 = 2.0 * nt - t;

  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(pattern_col.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (auto [col, prob] : exits[k]) r(static_cast<Eigen::Index>(k), col) += prob;
  }
  const Eigen::MatrixXd b = lu.solve(r);

  ChainResult out;
  const Eigen::Index start = index[0];
  out.expectation = t(start);
  out.second_moment = m2(start);
  out.variance = out.second_moment - out.expectation * out.expectation;
  for (const auto& [text, col] : pattern_col) out.patterns[text] = b(start, col);
  return out;
}

/// P(fewer than s successes in w trials) through the negative-binomial law
/// of the s-th success time: 1 - sum_{n=s}^{w} C(n-1,s-1) q^(n-s) p^s.
inline double negative_binomial_tail(int w, int s, double p) {
  double head = 0.0;
  for (int n = s; n <= w; ++n) {
    const double log_c = std::lgamma(n) - std::lgamma(s) - std::lgamma(n - s + 1);
    head += std::exp(log_c + (n - s) * std::log1p(-p) + s * std::log(p));
  }
  return 1.0 - head;
}

/// Test-round success probability of the square graph with traps on the
/// second colour class, as the printed four-term polynomial (1-indexed F).
inline double q_square_polynomial(double f1, double f2, double f3, double f4) {
  return f1 * f2 * f3 * f4 + f1 * (1 - f2) * (1 - f3) * (1 - f4) +
         (1 - f1) * (1 - f2) * f3 * (1 - f4) + (1 - f1) * f2 * (1 - f3) * f4;
}

}  // namespace oracle
