#include "scanwin/solver.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "scanwin/error.hpp"

namespace scanwin {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

template <typename Product>
MatrixXd overlap_matrix(const PatternSet& set, const TrialProbability& prob,
                        Product product) {
  const auto n = static_cast<Index>(set.size());
  MatrixXd m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& xi = set[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) {
      m(i, j) = product(xi.bits(), set[static_cast<std::size_t>(j)].bits(), prob);
    }
  }
  return m;
}

MatrixXd star_matrix(const PatternSet& set, const TrialProbability& prob) {
  return overlap_matrix(set, prob, [](auto x, auto y, const TrialProbability& pr) {
    return star(x, y, pr);
  });
}

MatrixXd dagger_matrix(const PatternSet& set, const TrialProbability& prob) {
  return overlap_matrix(set, prob, [](auto x, auto y, const TrialProbability& pr) {
    return dagger(x, y, pr);
  });
}

bool all_finite(const VectorXd& v) { return v.allFinite(); }

}  // namespace

WindowStats solve_first_moment(int w, int s, const TrialProbability& prob,
                               const SolverOptions& options) {
  if (prob.p() < options.small_p_threshold) {
    throw Error(ErrorKind::kSmallProbability,
                fmt::format("p={} is below the solver threshold {}; use the small-p "
                            "asymptotics instead",
                            prob.p(), options.small_p_threshold));
  }
  WindowStats stats;
  stats.w = w;
  stats.s = s;
  stats.p = prob.p();
  stats.patterns = enumerate_patterns(w, s, options.pattern_cap);

  const auto n = static_cast<Index>(stats.patterns.size());
  MatrixXd a(n + 1, n + 1);
  a(0, 0) = 0.0;
  a.row(0).tail(n).setOnes();
  a.col(0).tail(n).setConstant(-1.0);
  a.bottomRightCorner(n, n) = star_matrix(stats.patterns, prob);

  Eigen::PartialPivLU<MatrixXd> lu(a);
  const double rcond = lu.rcond();
  VectorXd rhs = VectorXd::Zero(n + 1);
  rhs(0) = 1.0;
  const VectorXd v = lu.solve(rhs);
  if (!(rcond > 0.0) || !all_finite(v)) {
    throw Error(ErrorKind::kSingularMatrix,
                fmt::format("first-moment system for (w={}, s={}, p={}) is singular", w,
                            s, prob.p()));
  }
  stats.condition_estimate = 1.0 / rcond;
  if (stats.condition_estimate > options.condition_warning) {
    stats.warnings.push_back(fmt::format(
        "first-moment matrix condition estimate {:.3e} exceeds {:.0e}; results may "
        "be inaccurate",
        stats.condition_estimate, options.condition_warning));
  }
  stats.expectation = v(0);
  stats.distribution.assign(v.data() + 1, v.data() + 1 + n);
  return stats;
}

WindowStats solve_second_moment(WindowStats first, const SolverOptions& options) {
  const TrialProbability prob(first.p);
  const MatrixXd w_mat = star_matrix(first.patterns, prob);
  const MatrixXd n_mat = dagger_matrix(first.patterns, prob);
  const auto n = w_mat.rows();

  Eigen::PartialPivLU<MatrixXd> lu(w_mat);
  const VectorXd ones = VectorXd::Ones(n);
  const VectorXd u = lu.solve(ones);
  const VectorXd v = lu.solve(ones - n_mat * u);
  if (!(lu.rcond() > 0.0) || !all_finite(u) || !all_finite(v)) {
    throw Error(ErrorKind::kSingularMatrix,
                fmt::format("second-moment system for (w={}, s={}, p={}) is singular",
                            first.w, first.s, first.p));
  }

  const double half_sum_u = u.sum() / 2.0;
  const double sum_v = v.sum();
  const double e1 = first.expectation;
  const double e2 = (1.0 + (1.0 - sum_v - half_sum_u) * e1) / half_sum_u;
  double var = e2 - e1 * e1;
  if (var < 0.0) {
    if (var < -options.variance_tolerance * e2) {
      throw Error(ErrorKind::kNegativeVariance,
                  fmt::format("variance {} is negative beyond round-off for (w={}, "
                              "s={}, p={})",
                              var, first.w, first.s, first.p));
    }
    var = 0.0;
  }
  first.second_moment = e2;
  first.variance = var;
  return first;
}

WindowStats solve_second_moment(int w, int s, const TrialProbability& prob,
                                const SolverOptions& options) {
  return solve_second_moment(solve_first_moment(w, s, prob, options), options);
}

double std_dev(const WindowStats& stats) {
  if (!stats.variance) {
    throw Error(ErrorKind::kMissingVariance,
                "standard deviation requested but the variance was not computed");
  }
  return std::sqrt(*stats.variance);
}

}  // namespace scanwin
