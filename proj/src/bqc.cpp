#include "scanwin/bqc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "scanwin/approx.hpp"
#include "scanwin/bisect.hpp"
#include "scanwin/error.hpp"
#include "scanwin/parallel.hpp"

namespace scanwin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::kInvalidArgument, message);
}

}  // namespace

ColoredGraph ColoredGraph::create(int vertex_count, std::vector<std::pair<int, int>> edges,
                                  std::vector<std::vector<int>> coloring) {
  if (vertex_count < 1) invalid("graph needs at least one vertex");
  ColoredGraph g;
  g.vertex_count_ = vertex_count;
  const auto n = static_cast<std::size_t>(vertex_count);

  std::vector<int> color_of(n, -1);
  for (std::size_t c = 0; c < coloring.size(); ++c) {
    if (coloring[c].empty()) invalid(fmt::format("colour class {} is empty", c));
    std::sort(coloring[c].begin(), coloring[c].end());
    for (int v : coloring[c]) {
      if (v < 0 || v >= vertex_count) invalid(fmt::format("colour class {} names unknown vertex {}", c, v));
      auto& slot = color_of[static_cast<std::size_t>(v)];
      if (slot != -1) invalid(fmt::format("vertex {} has more than one colour", v));
      slot = static_cast<int>(c);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (color_of[v] == -1) invalid(fmt::format("vertex {} has no colour", v));
  }

  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      invalid(fmt::format("edge ({},{}) names an unknown vertex", u, v));
    }
    if (u == v) invalid(fmt::format("self-loop at vertex {}", u));
    if (u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second) invalid(fmt::format("duplicate edge ({},{})", u, v));
    if (color_of[static_cast<std::size_t>(u)] == color_of[static_cast<std::size_t>(v)]) {
      invalid(fmt::format("edge ({},{}) joins two vertices of colour {}", u, v,
                          color_of[static_cast<std::size_t>(u)]));
    }
  }
  g.edges_.assign(seen.begin(), seen.end());
  g.coloring_ = std::move(coloring);
  g.adjacency_.assign(n, {});
  for (auto [u, v] : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

ColoredGraph ColoredGraph::square() {
  return create(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 2}, {1, 3}});
}

void NoiseModel::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) invalid(fmt::format("lambda must be >= 0, got {}", lambda));
  if (!(memory_lifetime > 0.0)) invalid(fmt::format("memory lifetime T must be > 0, got {}", memory_lifetime));
  if (!(gamma >= 0.0 && gamma < 0.5)) invalid(fmt::format("gamma must lie in [0, 1/2), got {}", gamma));
}

double feasibility_threshold(const NoiseModel& noise, int k) {
  noise.validate();
  if (k < 1) invalid("colour count must be >= 1");
  return (2.0 * noise.gamma - 1.0) / (k * (2.0 * noise.gamma - 2.0));
}

std::vector<double> fidelity_vector(const EndingPattern& x, double p, const NoiseModel& noise) {
  noise.validate();
  if (noise.lambda * p > 1.0) {
    invalid(fmt::format("lambda * p = {} exceeds 1; F_est would be negative", noise.lambda * p));
  }
  const double excess = (1.0 - noise.lambda * p) - 0.5;
  std::vector<double> f;
  for (int age : ages_from_pattern(x)) {
    f.push_back(excess * std::exp(-static_cast<double>(age) / noise.memory_lifetime) + 0.5);
  }
  return f;
}

double test_round_success(const ColoredGraph& graph, int trap_color,
                          std::span<const double> fidelity_by_vertex) {
  if (trap_color < 0 || trap_color >= graph.color_count()) {
    invalid(fmt::format("trap colour {} out of range", trap_color));
  }
  if (fidelity_by_vertex.size() != static_cast<std::size_t>(graph.vertex_count())) {
    invalid(fmt::format("expected {} fidelities, got {}", graph.vertex_count(),
                        fidelity_by_vertex.size()));
  }
  for (double f : fidelity_by_vertex) {
    if (!(f >= 0.0 && f <= 1.0)) invalid(fmt::format("fidelity {} outside [0,1]", f));
  }

  const auto& traps = graph.coloring()[static_cast<std::size_t>(trap_color)];
  std::vector<int> dummies;
  for (int v : traps) {
    for (int u : graph.neighbors(v)) dummies.push_back(u);
  }
  std::sort(dummies.begin(), dummies.end());
  dummies.erase(std::unique(dummies.begin(), dummies.end()), dummies.end());
  if (static_cast<int>(dummies.size()) > kMaxDummyNeighbourhood) {
    throw Error(ErrorKind::kBlowupGuard,
                fmt::format("trap colour {} has {} adjacent dummies; the 2^|W| sum is "
                            "capped at |W| <= {}",
                            trap_color, dummies.size(), kMaxDummyNeighbourhood));
  }

  // Bit i of a flip mask refers to dummies[i].
  std::vector<std::uint32_t> trap_masks;
  for (int v : traps) {
    std::uint32_t mask = 0;
    for (int u : graph.neighbors(v)) {
      const auto it = std::lower_bound(dummies.begin(), dummies.end(), u);
      mask |= 1u << static_cast<unsigned>(it - dummies.begin());
    }
    trap_masks.push_back(mask);
  }

  const auto fid = [&](int v) { return fidelity_by_vertex[static_cast<std::size_t>(v)]; };
  const std::uint32_t terms = 1u << dummies.size();
  double total = 0.0;
  for (std::uint32_t y = 0; y < terms; ++y) {
    double term = 1.0;
    for (std::size_t i = 0; i < dummies.size() && term != 0.0; ++i) {
      const double f = fid(dummies[i]);
      term *= (y >> i) & 1u ? 1.0 - f : f;
    }
    for (std::size_t t = 0; t < traps.size() && term != 0.0; ++t) {
      const double f = fid(traps[t]);
      term *= std::popcount(y & trap_masks[t]) & 1 ? 1.0 - f : f;
    }
    total += term;
  }
  return total;
}

double round_error(const ColoredGraph& graph, std::span<const double> fidelity_oldest_first) {
  const auto n = static_cast<std::size_t>(graph.vertex_count());
  if (fidelity_oldest_first.size() != n) {
    invalid(fmt::format("expected {} fidelities, got {}", n, fidelity_oldest_first.size()));
  }
  std::vector<double> rotated(n);
  double total = 0.0;
  for (int color = 0; color < graph.color_count(); ++color) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < n; ++i) rotated[i] = fidelity_oldest_first[(i + c) % n];
      total += 1.0 - test_round_success(graph, color, rotated);
    }
  }
  return total / (static_cast<double>(graph.color_count()) * static_cast<double>(n));
}

RoundEvaluation evaluate_round(const ColoredGraph& graph, const NoiseModel& noise, int w,
                               double p, const BqcOptions& options) {
  noise.validate();
  const int s = graph.vertex_count();
  PatternSet patterns;
  std::vector<double> distribution;
  RoundEvaluation eval;
  if (p < options.solver.small_p_threshold) {
    patterns = enumerate_patterns(w, s, options.solver.pattern_cap);
    distribution = asymptotic_distribution(w, s, options.solver.pattern_cap);
    eval.expected_time = asymptotic_expectation(w, s, p);
  } else {
    auto stats = solve_first_moment(w, s, TrialProbability(p), options.solver);
    eval.expected_time = stats.expectation;
    patterns = std::move(stats.patterns);
    distribution = std::move(stats.distribution);
  }
  double p_av = 0.0;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    p_av += distribution[i] * round_error(graph, fidelity_vector(patterns[i], p, noise));
  }
  eval.p_av = p_av;
  return eval;
}

double average_error(const BqcScenario& scenario, const BqcOptions& options) {
  return evaluate_round(scenario.graph, scenario.noise, scenario.w, scenario.p, options).p_av;
}

std::string feasibility_name(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible: return "feasible";
    case Feasibility::kInfeasible: return "infeasible";
    case Feasibility::kCapReached: return "cap_reached";
    case Feasibility::kMonotonicityViolation: return "monotonicity_violation";
  }
  return "unknown";
}

WindowChoice w_max(double p, const ColoredGraph& graph, const NoiseModel& noise,
                   const BqcOptions& options) {
  const double threshold = feasibility_threshold(noise, graph.color_count());
  const int s = graph.vertex_count();
  if (options.w_cap < s) {
    invalid(fmt::format("w cap {} is below s = {}", options.w_cap, s));
  }
  WindowChoice choice;
  choice.expected_time = kNaN;
  double previous = -1.0;
  for (int w = s; w <= options.w_cap; ++w) {
    const auto eval = evaluate_round(graph, noise, w, p, options);
    if (eval.p_av < previous) {
      choice.diagnostics.push_back(fmt::format(
          "p_av decreased from {:.6g} to {:.6g} at w={}; w-monotonicity assumption violated",
          previous, eval.p_av, w));
    }
    previous = eval.p_av;
    if (!(eval.p_av < threshold)) {
      if (w == s) choice.p_av = eval.p_av;
      choice.status = w == s ? Feasibility::kInfeasible : Feasibility::kFeasible;
      return choice;
    }
    choice.w = w;
    choice.p_av = eval.p_av;
    choice.expected_time = eval.expected_time;
  }
  choice.status = Feasibility::kCapReached;
  return choice;
}

ProbabilityChoice p_max(int w, const ColoredGraph& graph, const NoiseModel& noise,
                        const BqcOptions& options) {
  const double threshold = feasibility_threshold(noise, graph.color_count());
  const double cap = noise.lambda > 1.0 ? 1.0 / noise.lambda : 1.0;
  const double hi = cap * (1.0 - 1e-9);
  const double lo = options.p_floor;

  ProbabilityChoice choice;
  choice.expected_time = kNaN;
  const auto at_hi = evaluate_round(graph, noise, w, hi, options);
  const auto at_lo = evaluate_round(graph, noise, w, lo, options);
  const bool lo_ok = at_lo.p_av < threshold;
  const bool hi_ok = at_hi.p_av < threshold;
  if (hi_ok && !lo_ok) {
    choice.status = Feasibility::kMonotonicityViolation;
    choice.diagnostics.push_back(fmt::format(
        "p_av is {:.6g} at p={} but {:.6g} at p={}; no monotone crossing of {}", at_lo.p_av,
        lo, at_hi.p_av, hi, threshold));
    return choice;
  }
  if (hi_ok) {
    choice.status = Feasibility::kCapReached;
    choice.p = cap;
    choice.p_av = at_hi.p_av;
    choice.expected_time = at_hi.expected_time;
    return choice;
  }
  if (!lo_ok) {
    choice.status = Feasibility::kInfeasible;
    choice.p_av = at_lo.p_av;
    return choice;
  }

  RoundEvaluation best = at_lo;
  const auto [feasible_p, infeasible_p] =
      bisect_boundary(lo, hi, options.p_tolerance, [&](double p) {
        const auto eval = evaluate_round(graph, noise, w, p, options);
        if (eval.p_av < threshold) {
          best = eval;
          return true;
        }
        return false;
      });
  (void)infeasible_p;
  choice.status = Feasibility::kFeasible;
  choice.p = feasible_p;
  // best always tracks the most recent feasible probe, which is feasible_p.
  choice.p_av = best.p_av;
  choice.expected_time = best.expected_time;
  return choice;
}

std::vector<RateRow> optimize_rate_over_p(std::span<const double> ps, const ColoredGraph& graph,
                                          const NoiseModel& noise, const BqcOptions& options) {
  std::vector<RateRow> rows(ps.size());
  parallel_for(ps.size(), options.threads, [&](std::size_t i) {
    const auto choice = w_max(ps[i], graph, noise, options);
    rows[i] = RateRow{ps[i], choice.w, choice.expected_time, choice.p_av, choice.status};
  });
  return rows;
}

std::vector<RateRow> optimize_rate_over_w(std::span<const int> ws, const ColoredGraph& graph,
                                          const NoiseModel& noise, const BqcOptions& options) {
  std::vector<RateRow> rows(ws.size());
  parallel_for(ws.size(), options.threads, [&](std::size_t i) {
    const auto choice = p_max(ws[i], graph, noise, options);
    rows[i] = RateRow{choice.p, ws[i], choice.expected_time, choice.p_av, choice.status};
  });
  return rows;
}

}  // namespace scanwin
