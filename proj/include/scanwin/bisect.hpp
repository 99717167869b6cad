#pragma once

#include <utility>

namespace scanwin {

/// Narrows [lo, hi] around the boundary of a predicate that holds at lo and
/// fails at hi, until hi - lo <= tol. Returns the final (lo, hi) pair; the
/// predicate is never evaluated at the endpoints.
template <typename Predicate>
std::pair<double, double> bisect_boundary(double lo, double hi, double tol,
                                          Predicate holds) {
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;  // one ulp apart
    if (holds(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace scanwin
