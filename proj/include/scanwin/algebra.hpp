#pragma once

#include <span>

#include "scanwin/patterns.hpp"

namespace scanwin {

/// Per-trial success probability, strictly inside (0, 1).
class TrialProbability {
 public:
  /// Throws Error(kInvalidArgument) unless 0 < p < 1.
  explicit TrialProbability(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

/// Fair-odds payout for matching symbols: 1/p for (1,1), 1/(1-p) for
/// (0,0), and 0 on a mismatch.
double delta(Bit a, Bit b, const TrialProbability& prob) noexcept;

/// Sum over j = 1..min(|x|,|y|) of the product of delta(x_i, y_{m-j+i}),
/// i.e. every length-j prefix of x that exactly matches the length-j
/// suffix of y contributes its payout product.
double star(std::span<const Bit> x, std::span<const Bit> y,
            const TrialProbability& prob) noexcept;

/// Same overlap sum as star() with each j-term weighted by (1 - j).
double dagger(std::span<const Bit> x, std::span<const Bit> y,
              const TrialProbability& prob) noexcept;

inline double star(const EndingPattern& x, const EndingPattern& y,
                   const TrialProbability& prob) noexcept {
  return star(x.bits(), y.bits(), prob);
}

inline double dagger(const EndingPattern& x, const EndingPattern& y,
                     const TrialProbability& prob) noexcept {
  return dagger(x.bits(), y.bits(), prob);
}

}  // namespace scanwin
