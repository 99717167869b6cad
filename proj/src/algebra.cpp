#include "scanwin/algebra.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "scanwin/error.hpp"

namespace scanwin {

TrialProbability::TrialProbability(double p) : p_(p), q_(1.0 - p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("success probability must lie in (0,1), got {}", p));
  }
}

double delta(Bit a, Bit b, const TrialProbability& prob) noexcept {
  if (a != b) return 0.0;
  return a ? 1.0 / prob.p() : 1.0 / prob.q();
}

namespace {

// Calls term(j, product) for every overlap length j whose product is nonzero.
template <typename Term>
void for_each_overlap(std::span<const Bit> x, std::span<const Bit> y,
                      const TrialProbability& prob, Term term) {
  const std::size_t k = x.size();
  const std::size_t m = y.size();
  const std::size_t n = std::min(k, m);
  const double inv_p = 1.0 / prob.p();
  const double inv_q = 1.0 / prob.q();
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t offset = m - j;
    double product = 1.0;
    bool match = true;
    for (std::size_t i = 0; i < j; ++i) {
      const Bit a = x[i];
      if (a != y[offset + i]) {
        match = false;
        break;
      }
      product *= a ? inv_p : inv_q;
    }
    if (match) term(j, product);
  }
}

}  // namespace

double star(std::span<const Bit> x, std::span<const Bit> y,
            const TrialProbability& prob) noexcept {
  double total = 0.0;
  for_each_overlap(x, y, prob, [&](std::size_t, double product) { total += product; });
  return total;
}

double dagger(std::span<const Bit> x, std::span<const Bit> y,
              const TrialProbability& prob) noexcept {
  double total = 0.0;
  for_each_overlap(x, y, prob, [&](std::size_t j, double product) {
    total += (1.0 - static_cast<double>(j)) * product;
  });
  return total;
}

}  // namespace scanwin
