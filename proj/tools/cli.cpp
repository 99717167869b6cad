#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "scanwin/approx.hpp"
#include "scanwin/bqc.hpp"
#include "scanwin/closed_forms.hpp"
#include "scanwin/error.hpp"
#include "scanwin/io.hpp"
#include "scanwin/parallel.hpp"
#include "scanwin/sim.hpp"
#include "scanwin/solver.hpp"

namespace scanwin::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::kUsage, message); }

unsigned default_threads() {
  if (const char* env = std::getenv("SCANWIN_THREADS")) {
    unsigned n = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec == std::errc() && ptr == text.data() + text.size() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    usage(fmt::format("cannot parse {} from '{}'", what, text));
  }
  return value;
}

// std::nullopt means the infinite window.
std::optional<int> parse_window(const std::string& text) {
  if (text == "inf") return std::nullopt;
  return parse_number<int>(text, "window");
}

std::pair<std::string, std::string> split_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) usage(fmt::format("range '{}' must look like FROM:TO", text));
  return {text.substr(0, colon), text.substr(colon + 1)};
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot write '{}'", path));
}

std::string with_manifest(const RunManifest& manifest, const json& payload) {
  json doc;
  doc["manifest"] = to_json(manifest);
  for (const auto& [key, value] : payload.items()) doc[key] = value;
  return doc.dump(2) + "\n";
}

std::string output_name(const std::string& path) { return path.empty() ? "stdout" : path; }

struct Moments {
  double expectation = 0.0;
  double std_dev = kNaN;
};

WindowStats s2_stats(int w, double p, bool second, std::size_t cap) {
  const TrialProbability prob(p);
  WindowStats stats;
  stats.w = w;
  stats.s = 2;
  stats.p = p;
  stats.expectation = expectation_s2(w, prob);
  stats.patterns = enumerate_patterns(w, 2, cap);
  stats.distribution = pattern_dist_s2(w, prob);
  stats.condition_estimate = kNaN;
  if (second) {
    stats.variance = variance_s2(w, prob);
    stats.second_moment = *stats.variance + stats.expectation * stats.expectation;
  }
  return stats;
}

WindowStats small_p_stats(int w, int s, double p, const SolverOptions& options) {
  WindowStats stats;
  stats.w = w;
  stats.s = s;
  stats.p = p;
  stats.expectation = asymptotic_expectation(w, s, p);
  stats.patterns = enumerate_patterns(w, s, options.pattern_cap);
  stats.distribution = asymptotic_distribution(w, s, options.pattern_cap);
  stats.condition_estimate = kNaN;
  stats.warnings.push_back(fmt::format(
      "p = {} is below {}; reporting the small-p limit instead of solving", p,
      options.small_p_threshold));
  return stats;
}

// Picks the cheapest exact route unless forced onto the general solver.
std::pair<WindowStats, std::string> window_stats(int w, int s, double p, bool second,
                                                 bool force_solver, const SolverOptions& options) {
  if (!force_solver && s == 2 && p > 0.0 && p < 1.0) {
    return {s2_stats(w, p, second, options.pattern_cap), "closed_form_s2"};
  }
  if (!force_solver && p > 0.0 && p < options.small_p_threshold) {
    if (second) {
      throw Error(ErrorKind::kSmallProbability,
                  fmt::format("no second moment below p = {}; the small-p limit only gives "
                              "the expectation and distribution",
                              options.small_p_threshold));
    }
    return {small_p_stats(w, s, p, options), "small_p_limit"};
  }
  const TrialProbability prob(p);
  return {second ? solve_second_moment(w, s, prob, options) : solve_first_moment(w, s, prob, options),
          "solver"};
}

Moments window_moments(std::optional<int> w, int s, double p, const SolverOptions& options) {
  if (!w) {
    const auto inf = infinite_window_stats(s, p);
    return {inf.expectation, std::sqrt(inf.variance)};
  }
  if (p < options.small_p_threshold && s != 2) {
    return {asymptotic_expectation(*w, s, p), kNaN};
  }
  const auto [stats, method] = window_stats(*w, s, p, true, false, options);
  return {stats.expectation, std_dev(stats)};
}

// ---- patterns -------------------------------------------------------------

struct PatternsArgs {
  int w = 0;
  int s = 0;
  std::size_t cap = kDefaultPatternCap;
};

std::string cmd_patterns(const PatternsArgs& a, RunManifest& manifest) {
  manifest.parameters = {{"w", a.w}, {"s", a.s}, {"cap", a.cap}};
  const auto set = enumerate_patterns(a.w, a.s, a.cap);
  json list = json::array();
  for (const auto& x : set) list.push_back(x.to_string());
  return with_manifest(manifest, {{"w", a.w}, {"s", a.s}, {"count", set.size()}, {"patterns", list}});
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::string w;
  int s = 0;
  double p = 0.0;
  bool second_moment = false;
  bool force_solver = false;
  std::size_t cap = kDefaultPatternCap;
};

std::string cmd_stats(const StatsArgs& a, RunManifest& manifest) {
  manifest.parameters = {{"w", a.w}, {"s", a.s}, {"p", a.p}, {"second_moment", a.second_moment},
                         {"force_solver", a.force_solver}, {"cap", a.cap}};
  const auto w = parse_window(a.w);
  if (!w) {
    if (a.force_solver) usage("--force-solver needs a finite window; the solver has no w = inf mode");
    return with_manifest(manifest, to_json(infinite_window_stats(a.s, a.p)));
  }
  SolverOptions options;
  options.pattern_cap = a.cap;
  const auto [stats, method] = window_stats(*w, a.s, a.p, a.second_moment, a.force_solver, options);
  return with_manifest(manifest, to_json(stats, method));
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string vary;
  int s = 0;
  std::string w;
  std::optional<double> p;
  std::string range;
  int points = 100;
  std::size_t cap = kDefaultPatternCap;
};

std::string cmd_sweep(const SweepArgs& a, unsigned threads, RunManifest& manifest) {
  manifest.parameters = {{"vary", a.vary}, {"s", a.s}, {"range", a.range}, {"points", a.points},
                         {"cap", a.cap}};
  SolverOptions options;
  options.pattern_cap = a.cap;

  std::vector<std::optional<int>> ws;
  std::vector<double> ps;
  if (a.vary == "w") {
    if (!a.p) usage("sweep --vary w needs --p");
    if (a.range.empty()) usage("sweep --vary w needs --range FROM:TO");
    manifest.parameters["p"] = *a.p;
    const auto [lo, hi] = split_range(a.range);
    const int from = parse_number<int>(lo, "range start");
    const int to = parse_number<int>(hi, "range end");
    if (from < a.s || to < from) usage(fmt::format("w range must satisfy s <= FROM <= TO (s = {})", a.s));
    for (int w = from; w <= to; ++w) {
      ws.emplace_back(w);
      ps.push_back(*a.p);
    }
  } else if (a.vary == "p") {
    if (a.w.empty()) usage("sweep --vary p needs --w");
    manifest.parameters["w"] = a.w;
    if (a.points < 1) usage("--points must be >= 1");
    const auto w = parse_window(a.w);
    if (a.range.empty()) {
      for (int i = 1; i <= a.points; ++i) ps.push_back(static_cast<double>(i) / (a.points + 1));
    } else {
      const auto [lo, hi] = split_range(a.range);
      const double from = parse_number<double>(lo, "range start");
      const double to = parse_number<double>(hi, "range end");
      if (!(from > 0.0 && to < 1.0 && from <= to)) usage("p range must satisfy 0 < FROM <= TO < 1");
      for (int i = 0; i < a.points; ++i) {
        ps.push_back(a.points == 1 ? from : from + (to - from) * i / (a.points - 1));
      }
    }
    ws.assign(ps.size(), w);
  } else {
    usage(fmt::format("--vary must be w or p, got '{}'", a.vary));
  }

  std::vector<Moments> moments(ps.size());
  parallel_for(ps.size(), threads,
               [&](std::size_t i) { moments[i] = window_moments(ws[i], a.s, ps[i], options); });

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string key = a.vary == "w" ? std::to_string(*ws[i]) : format_number(ps[i]);
    rows.push_back({key, format_number(moments[i].expectation), format_number(moments[i].std_dev),
                    format_number(expectation_infinite(a.s, ps[i]))});
  }
  return csv_document(manifest, {a.vary, "expectation", "std_dev", "infinite_bound"}, rows);
}

// ---- threshold ------------------------------------------------------------

struct ThresholdArgs {
  std::string kind;
  int s = 0;
  std::optional<double> p;
  std::optional<int> w;
  double delta = 0.0;
  std::size_t cap = kDefaultPatternCap;
};

std::string cmd_threshold(const ThresholdArgs& a, RunManifest& manifest) {
  manifest.parameters = {{"kind", a.kind}, {"s", a.s}, {"delta", a.delta}, {"cap", a.cap}};
  const auto kind = parse_threshold_kind(a.kind);
  const bool w_kind = kind == ThresholdKind::kWStar || kind == ThresholdKind::kTrueWStar;
  std::variant<int, double> fixed;
  if (w_kind) {
    if (!a.p) usage(fmt::format("{} needs --p", a.kind));
    fixed = *a.p;
    manifest.parameters["p"] = *a.p;
  } else {
    if (!a.w) usage(fmt::format("{} needs --w", a.kind));
    fixed = *a.w;
    manifest.parameters["w"] = *a.w;
  }
  SolverOptions options;
  options.pattern_cap = a.cap;
  return with_manifest(manifest, to_json(threshold_report(kind, a.s, fixed, a.delta, options)));
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  int w = 0;
  int s = 0;
  double p = 0.0;
  std::uint64_t runs = 10000;
  std::uint64_t seed = 1;
  std::string csv;
  bool verify = false;
};

std::string cmd_simulate(const SimulateArgs& a, unsigned threads, RunManifest& manifest) {
  manifest.parameters = {{"w", a.w}, {"s", a.s}, {"p", a.p}, {"runs", a.runs}, {"verify", a.verify}};
  manifest.seed = a.seed;
  if (!a.csv.empty()) manifest.outputs.push_back(a.csv);
  SimConfig config{a.w, a.s, a.p, a.runs, a.seed, threads, a.verify};
  const auto result = run_batch(config);
  if (!a.csv.empty()) write_text(samples_csv(result, manifest), a.csv, std::cout);
  return with_manifest(manifest, to_json(result));
}

// ---- bqc ------------------------------------------------------------------

struct BqcArgs {
  std::string scenario;
  std::string mode;
  std::string T;
  std::optional<double> p;
  std::optional<int> w;
  int w_cap = 20;
  std::string format = "json";
};

json choice_json(const WindowChoice& c) {
  return {{"status", feasibility_name(c.status)},
          {"w_max", c.w},
          {"p_av", c.p_av},
          {"expected_time", std::isnan(c.expected_time) ? json(nullptr) : json(c.expected_time)},
          {"diagnostics", c.diagnostics}};
}

json choice_json(const ProbabilityChoice& c) {
  return {{"status", feasibility_name(c.status)},
          {"p_max", c.p},
          {"p_av", c.p_av},
          {"expected_time", std::isnan(c.expected_time) ? json(nullptr) : json(c.expected_time)},
          {"diagnostics", c.diagnostics}};
}

std::string cmd_bqc(const BqcArgs& a, unsigned threads, RunManifest& manifest) {
  std::ifstream file(a.scenario, std::ios::binary);
  if (!file) throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot read scenario '{}'", a.scenario));
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("scenario '{}': {}", a.scenario, e.what()));
  }
  auto scenario = parse_scenario(doc);
  if (!a.T.empty()) {
    scenario.noise.memory_lifetime = a.T == "inf" ? kInf : parse_number<double>(a.T, "T");
    scenario.noise.validate();
  }
  if (a.p) scenario.p = a.p;
  if (a.w) scenario.w = a.w;
  if (a.format != "json" && a.format != "csv") usage("--format must be json or csv");
  if (a.format == "csv" && a.mode != "optimize") usage("--format csv is only available for --mode optimize");

  manifest.parameters = {{"scenario", doc}, {"mode", a.mode}, {"w_cap", a.w_cap}, {"format", a.format}};
  if (!a.T.empty()) manifest.parameters["T"] = a.T;
  if (scenario.p) manifest.parameters["p"] = *scenario.p;
  if (scenario.w) manifest.parameters["w"] = *scenario.w;

  BqcOptions options;
  options.w_cap = a.w_cap;
  options.threads = threads;
  const auto& graph = scenario.graph;
  const auto& noise = scenario.noise;
  const double threshold = feasibility_threshold(noise, graph.color_count());
  json payload{{"mode", a.mode}, {"threshold", threshold}};

  if (a.mode == "pav") {
    if (!scenario.p || !scenario.w) usage("--mode pav needs p and w (scenario or flags)");
    const auto eval = evaluate_round(graph, noise, *scenario.w, *scenario.p, options);
    payload["p"] = *scenario.p;
    payload["w"] = *scenario.w;
    payload["p_av"] = eval.p_av;
    payload["expected_time"] = eval.expected_time;
    payload["feasible"] = eval.p_av < threshold;
  } else if (a.mode == "wmax") {
    if (!scenario.p) usage("--mode wmax needs p (scenario or --p)");
    payload["p"] = *scenario.p;
    const auto choice = choice_json(w_max(*scenario.p, graph, noise, options));
    for (const auto& [key, value] : choice.items()) payload[key] = value;
  } else if (a.mode == "pmax") {
    if (!scenario.w) usage("--mode pmax needs w (scenario or --w)");
    payload["w"] = *scenario.w;
    const auto choice = choice_json(p_max(*scenario.w, graph, noise, options));
    for (const auto& [key, value] : choice.items()) payload[key] = value;
  } else if (a.mode == "optimize") {
    if (!scenario.grid) usage("--mode optimize needs a 'grid' in the scenario");
    const auto& grid = *scenario.grid;
    const auto rows = grid.axis == RateAxis::kP
                          ? optimize_rate_over_p(grid.ps, graph, noise, options)
                          : optimize_rate_over_w(grid.ws, graph, noise, options);
    if (a.format == "csv") return rate_rows_csv(rows, grid.axis, manifest);
    payload["axis"] = grid.axis == RateAxis::kP ? "p" : "w";
    payload["rows"] = rate_rows_json(rows, grid.axis);
  } else {
    usage(fmt::format("--mode must be pav, wmax, pmax or optimize, got '{}'", a.mode));
  }
  return with_manifest(manifest, payload);
}

void emit_error(std::ostream& err, std::string_view kind, const std::string& message) {
  json j{{"error", {{"kind", kind}, {"message", message}}}};
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Waiting times and ending patterns for s successes inside a sliding window of w trials",
               "scanwin"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  unsigned threads = default_threads();
  app.add_option("--out", out_path, "Write the primary output to this file instead of stdout");
  app.add_option("--threads", threads, "Worker thread cap (default: $SCANWIN_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.set_version_flag("--version", version());

  PatternsArgs patterns;
  auto* patterns_cmd = app.add_subcommand("patterns", "List the ending patterns of a window in canonical order");
  patterns_cmd->add_option("--w", patterns.w, "Window length")->required();
  patterns_cmd->add_option("--s", patterns.s, "Successes required")->required();
  patterns_cmd->add_option("--cap", patterns.cap, "Maximum number of patterns to enumerate");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Expectation, variance and ending-pattern distribution");
  stats_cmd->add_option("--w", stats.w, "Window length, or inf")->required();
  stats_cmd->add_option("--s", stats.s, "Successes required")->required();
  stats_cmd->add_option("--p", stats.p, "Success probability per trial")->required();
  stats_cmd->add_flag("--second-moment", stats.second_moment, "Also compute E(tau^2) and the variance");
  stats_cmd->add_flag("--force-solver", stats.force_solver, "Skip the s = 2 and small-p shortcuts");
  stats_cmd->add_option("--cap", stats.cap, "Maximum number of patterns to enumerate");

  SweepArgs sweep;
  std::optional<double> sweep_p;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of expectation and std. deviation over w or p");
  sweep_cmd->add_option("--vary", sweep.vary, "Swept parameter: w or p")->required();
  sweep_cmd->add_option("--s", sweep.s, "Successes required")->required();
  sweep_cmd->add_option("--w", sweep.w, "Fixed window (for --vary p), or inf");
  sweep_cmd->add_option("--p", sweep_p, "Fixed success probability (for --vary w)");
  sweep_cmd->add_option("--range", sweep.range, "FROM:TO, inclusive");
  sweep_cmd->add_option("--points", sweep.points,
                        "Grid size for --vary p; without --range, p_i = i/(points+1)");
  sweep_cmd->add_option("--cap", sweep.cap, "Maximum number of patterns to enumerate");

  ThresholdArgs threshold;
  std::optional<double> threshold_p;
  std::optional<int> threshold_w;
  auto* threshold_cmd = app.add_subcommand("threshold", "Windows or probabilities beyond which w = inf is a good approximation");
  threshold_cmd->add_option("--kind", threshold.kind, "w_star, p_star, true_w_star or true_p_star")->required();
  threshold_cmd->add_option("--s", threshold.s, "Successes required")->required();
  threshold_cmd->add_option("--p", threshold_p, "Fixed p (w_star, true_w_star)");
  threshold_cmd->add_option("--w", threshold_w, "Fixed w (p_star, true_p_star)");
  threshold_cmd->add_option("--delta", threshold.delta, "Tolerated relative error")->required();
  threshold_cmd->add_option("--cap", threshold.cap, "Maximum number of patterns to enumerate");

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo replications of the process");
  simulate_cmd->add_option("--w", simulate.w, "Window length")->required();
  simulate_cmd->add_option("--s", simulate.s, "Successes required")->required();
  simulate_cmd->add_option("--p", simulate.p, "Success probability per trial")->required();
  simulate_cmd->add_option("--runs", simulate.runs, "Number of replications");
  simulate_cmd->add_option("--seed", simulate.seed, "Batch seed");
  simulate_cmd->add_option("--csv", simulate.csv, "Also write raw samples (run_index, tau, pattern) here");
  simulate_cmd->add_flag("--verify", simulate.verify, "Re-scan every run for earlier windows (slow)");

  BqcArgs bqc;
  std::optional<double> bqc_p;
  std::optional<int> bqc_w;
  auto* bqc_cmd = app.add_subcommand("bqc", "Test-round error and rate optimisation for blind quantum computation");
  bqc_cmd->add_option("--scenario", bqc.scenario, "Scenario JSON file")->required();
  bqc_cmd->add_option("--mode", bqc.mode, "pav, wmax, pmax or optimize")->required();
  bqc_cmd->add_option("--T", bqc.T, "Override the memory lifetime (number or inf)");
  bqc_cmd->add_option("--p", bqc_p, "Override p");
  bqc_cmd->add_option("--w", bqc_w, "Override w");
  bqc_cmd->add_option("--w-cap", bqc.w_cap, "Largest window tried when maximising w");
  bqc_cmd->add_option("--format", bqc.format, "json or csv (csv for optimize only)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return 0;
  } catch (const CLI::Success&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, error_kind_name(ErrorKind::kUsage), e.what());
    return 2;
  }

  try {
    RunManifest manifest;
    manifest.outputs.push_back(output_name(out_path));
    std::string text;
    if (patterns_cmd->parsed()) {
      manifest.subcommand = "patterns";
      text = cmd_patterns(patterns, manifest);
    } else if (stats_cmd->parsed()) {
      manifest.subcommand = "stats";
      text = cmd_stats(stats, manifest);
    } else if (sweep_cmd->parsed()) {
      manifest.subcommand = "sweep";
      sweep.p = sweep_p;
      text = cmd_sweep(sweep, threads, manifest);
    } else if (threshold_cmd->parsed()) {
      manifest.subcommand = "threshold";
      threshold.p = threshold_p;
      threshold.w = threshold_w;
      text = cmd_threshold(threshold, manifest);
    } else if (simulate_cmd->parsed()) {
      manifest.subcommand = "simulate";
      text = cmd_simulate(simulate, threads, manifest);
    } else {
      manifest.subcommand = "bqc";
      bqc.p = bqc_p;
      bqc.w = bqc_w;
      text = cmd_bqc(bqc, threads, manifest);
    }
    write_text(text, out_path, out);
    return 0;
  } catch (const Error& e) {
    emit_error(err, error_kind_name(e.kind()), e.what());
    return e.kind() == ErrorKind::kUsage ? 2 : 1;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace scanwin::cli
