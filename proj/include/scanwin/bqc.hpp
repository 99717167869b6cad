#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scanwin/patterns.hpp"
#include "scanwin/solver.hpp"

namespace scanwin {

// Test-round error model for verifiable blind quantum computation on a
// k-coloured graph, fed by the ending-pattern distribution of the
// entanglement-generation process.

/// Largest dummy neighbourhood |W_j| for which the 2^|W_j| sum is evaluated.
inline constexpr int kMaxDummyNeighbourhood = 24;

class ColoredGraph {
 public:
  /// Validates that the graph is simple, every vertex has exactly one
  /// colour, and no edge is monochromatic. Throws Error(kInvalidArgument).
  static ColoredGraph create(int vertex_count, std::vector<std::pair<int, int>> edges,
                             std::vector<std::vector<int>> coloring);

  /// 4-cycle 0-1-2-3-0 coloured {0,2}, {1,3}.
  static ColoredGraph square();

  int vertex_count() const noexcept { return vertex_count_; }
  int color_count() const noexcept { return static_cast<int>(coloring_.size()); }
  /// Normalised (u < v), sorted.
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  const std::vector<std::vector<int>>& coloring() const noexcept { return coloring_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> coloring_;
  std::vector<std::vector<int>> adjacency_;
};

struct NoiseModel {
  /// Slope of the rate-fidelity trade-off F_est(p) = 1 - lambda p.
  double lambda = 0.0;
  /// Depolarising memory lifetime in time steps; may be +infinity.
  double memory_lifetime = 1.0;
  /// Inherent error probability of the computation, in [0, 1/2).
  double gamma = 0.0;

  /// Throws Error(kInvalidArgument) on out-of-range parameters.
  void validate() const;
};

/// Sufficient verifiability bound (2 gamma - 1) / (k (2 gamma - 2)); equals
/// 1/(2k) for deterministic computations.
double feasibility_threshold(const NoiseModel& noise, int k);

/// Fidelity of a qubit of age t: (F_est(p) - 1/2) e^{-t/T} + 1/2, for every
/// success of x, oldest first. Throws if lambda p > 1.
std::vector<double> fidelity_vector(const EndingPattern& x, double p, const NoiseModel& noise);

/// Probability that every trap of colour `trap_color` reports correctly:
/// sum over dummy flips y on W_j (the dummies adjacent to a trap) of
/// prod_{w in W_j} F_w^(y_w) prod_{v in V_j} F_v^(parity of y over v's
/// neighbours), with F^(0) = F and F^(1) = 1 - F. F is indexed by vertex.
double test_round_success(const ColoredGraph& graph, int trap_color,
                          std::span<const double> fidelity_by_vertex);

/// P_G(F): the test-round failure probability averaged over trap colour and
/// the |V| cyclic starting points of the send order. F is oldest first;
/// under rotation c, vertex i receives F[(i + c) mod |V|].
double round_error(const ColoredGraph& graph, std::span<const double> fidelity_oldest_first);

struct BqcOptions {
  SolverOptions solver;
  /// Largest window tried by w_max.
  int w_cap = 20;
  /// Bisection resolution in p for p_max.
  double p_tolerance = 1e-6;
  /// Smallest p probed by p_max; evaluated with the small-p uniform limit
  /// when below solver.small_p_threshold.
  double p_floor = 1e-6;
  unsigned threads = 1;
};

struct BqcScenario {
  ColoredGraph graph;
  NoiseModel noise;
  double p = 0.0;
  int w = 0;
};

struct RoundEvaluation {
  double p_av = 0.0;
  /// E(tau_(w,|V|)); the small-p limit when p is below the solver threshold.
  double expected_time = 0.0;
};

/// p_av = sum_x P(X_(w,s) = x) P_G(F(x)) with s = |V|, plus the expected
/// round time from the same solve.
RoundEvaluation evaluate_round(const ColoredGraph& graph, const NoiseModel& noise, int w,
                               double p, const BqcOptions& options = {});

double average_error(const BqcScenario& scenario, const BqcOptions& options = {});

enum class Feasibility { kFeasible, kInfeasible, kCapReached, kMonotonicityViolation };
std::string feasibility_name(Feasibility f);

struct WindowChoice {
  Feasibility status = Feasibility::kInfeasible;
  int w = 0;  // 0 when infeasible
  double p_av = 0.0;
  double expected_time = 0.0;
  std::vector<std::string> diagnostics;
};

/// Largest w in [s, options.w_cap] with p_av < threshold, scanning upward
/// and stopping at the first infeasible w.
WindowChoice w_max(double p, const ColoredGraph& graph, const NoiseModel& noise,
                   const BqcOptions& options = {});

struct ProbabilityChoice {
  Feasibility status = Feasibility::kInfeasible;
  double p = 0.0;  // 0 when infeasible
  double p_av = 0.0;
  double expected_time = 0.0;
  std::vector<std::string> diagnostics;
};

/// Supremum p in (0, min(1, 1/lambda)) with p_av < threshold, by bisection.
ProbabilityChoice p_max(int w, const ColoredGraph& graph, const NoiseModel& noise,
                        const BqcOptions& options = {});

struct RateRow {
  double p = 0.0;
  int w = 0;
  double expected_time = 0.0;  // NaN unless feasible or cap-reached
  double p_av = 0.0;
  Feasibility status = Feasibility::kInfeasible;

  bool usable() const noexcept {
    return status == Feasibility::kFeasible || status == Feasibility::kCapReached;
  }
};

/// For each p: w_max(p), then E(tau_(w_max, s)) at p.
std::vector<RateRow> optimize_rate_over_p(std::span<const double> ps, const ColoredGraph& graph,
                                          const NoiseModel& noise, const BqcOptions& options = {});

/// For each w: p_max(w), then E(tau_(w, s)) at p_max.
std::vector<RateRow> optimize_rate_over_w(std::span<const int> ws, const ColoredGraph& graph,
                                          const NoiseModel& noise, const BqcOptions& options = {});

}  // namespace scanwin
