#include "scanwin/io.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "scanwin/error.hpp"

#ifndef SCANWIN_VERSION
#define SCANWIN_VERSION "0.0.0"
#endif

namespace scanwin {

namespace {

[[noreturn]] void bad_scenario(const std::string& message) {
  throw Error(ErrorKind::kInvalidArgument, "scenario: " + message);
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) bad_scenario(fmt::format("missing field '{}'", key));
  return doc.at(key);
}

double number_field(const json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number()) bad_scenario(fmt::format("'{}' must be a number", key));
  return v.get<double>();
}

int int_field(const json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer()) bad_scenario(fmt::format("'{}' must be an integer", key));
  return v.get<int>();
}

json variant_to_json(const std::variant<int, double>& v) {
  return std::visit([](auto x) { return json(x); }, v);
}

}  // namespace

std::string version() { return SCANWIN_VERSION; }

json to_json(const RunManifest& manifest) {
  json j;
  j["subcommand"] = manifest.subcommand;
  j["parameters"] = manifest.parameters;
  j["seed"] = manifest.seed ? json(*manifest.seed) : json(nullptr);
  j["version"] = version();
  j["outputs"] = manifest.outputs;
  return j;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string csv_document(const RunManifest& manifest, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::string out = "# manifest: " + to_json(manifest).dump() + "\n";
  out += fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& row : rows) out += fmt::format("{}\n", fmt::join(row, ","));
  return out;
}

json to_json(const WindowStats& stats, const std::string& method) {
  json j;
  j["w"] = stats.w;
  j["s"] = stats.s;
  j["p"] = stats.p;
  j["method"] = method;
  j["expectation"] = stats.expectation;
  if (stats.second_moment) j["second_moment"] = *stats.second_moment;
  if (stats.variance) j["variance"] = *stats.variance;
  j["pattern_count"] = stats.patterns.size();
  json dist = json::array();
  for (std::size_t i = 0; i < stats.patterns.size(); ++i) {
    dist.push_back({{"pattern", stats.patterns[i].to_string()}, {"prob", stats.distribution[i]}});
  }
  j["distribution"] = std::move(dist);
  j["condition_estimate"] = stats.condition_estimate;
  j["warnings"] = stats.warnings;
  return j;
}

json to_json(const InfiniteWindowStats& stats) {
  json j;
  j["w"] = "inf";
  j["s"] = stats.s;
  j["p"] = stats.p;
  j["method"] = "negative_binomial";
  j["expectation"] = stats.expectation;
  j["variance"] = stats.variance;
  return j;
}

json to_json(const ApproxReport& report) {
  json j;
  j["kind"] = threshold_kind_name(report.kind);
  j["s"] = report.s;
  const bool w_kind = report.kind == ThresholdKind::kWStar || report.kind == ThresholdKind::kTrueWStar;
  j[w_kind ? "p" : "w"] = variant_to_json(report.fixed);
  j["delta"] = report.delta;
  j["threshold"] = variant_to_json(report.threshold);
  j["epsilon"] = report.epsilon;
  j["bound_kind"] = bound_kind_name(report.bound_kind);
  j["distribution_l1_bound"] = report.distribution_l1_bound;
  j["relative_gap"] = report.relative_gap ? json(*report.relative_gap) : json(nullptr);
  return j;
}

json to_json(const SimResult& result) {
  const auto& c = result.config;
  json j;
  j["w"] = c.w;
  j["s"] = c.s;
  j["p"] = c.p;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["mean"] = result.mean;
  j["variance"] = result.variance;
  j["mean_standard_error"] = result.mean_standard_error;
  j["variance_standard_error"] = result.variance_standard_error;
  json patterns = json::array();
  for (const auto& [pattern, tally] : result.patterns) {
    patterns.push_back({{"pattern", pattern.to_string()},
                        {"count", tally.count},
                        {"frequency", tally.frequency},
                        {"standard_error", tally.standard_error}});
  }
  j["patterns"] = std::move(patterns);
  return j;
}

std::string samples_csv(const SimResult& result, const RunManifest& manifest) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(result.samples.size());
  for (std::size_t i = 0; i < result.samples.size(); ++i) {
    const auto& sample = result.samples[i];
    rows.push_back({std::to_string(i), std::to_string(sample.tau), sample.pattern.to_string()});
  }
  return csv_document(manifest, {"run_index", "tau", "pattern"}, rows);
}

json rate_rows_json(std::span<const RateRow> rows, RateAxis axis) {
  json out = json::array();
  for (const auto& row : rows) {
    json j;
    if (axis == RateAxis::kP) {
      j["p"] = row.p;
      j["w_max"] = row.w;
    } else {
      j["w"] = row.w;
      j["p_max"] = row.p;
    }
    j["expected_time"] = std::isnan(row.expected_time) ? json(nullptr) : json(row.expected_time);
    j["p_av"] = row.p_av;
    j["feasible"] = row.usable();
    j["status"] = feasibility_name(row.status);
    out.push_back(std::move(j));
  }
  return out;
}

std::string rate_rows_csv(std::span<const RateRow> rows, RateAxis axis,
                          const RunManifest& manifest) {
  std::vector<std::string> header =
      axis == RateAxis::kP
          ? std::vector<std::string>{"p", "w_max", "expected_time", "p_av", "feasible", "status"}
          : std::vector<std::string>{"w", "p_max", "expected_time", "p_av", "feasible", "status"};
  std::vector<std::vector<std::string>> body;
  for (const auto& row : rows) {
    std::string first = axis == RateAxis::kP ? format_number(row.p) : std::to_string(row.w);
    std::string second = axis == RateAxis::kP ? std::to_string(row.w) : format_number(row.p);
    body.push_back({first, second, format_number(row.expected_time), format_number(row.p_av),
                    row.usable() ? "true" : "false", feasibility_name(row.status)});
  }
  return csv_document(manifest, header, body);
}

ScenarioFile parse_scenario(const json& doc) {
  if (!doc.is_object()) bad_scenario("top level must be an object");
  const int vertices = int_field(doc, "vertices");

  std::vector<std::pair<int, int>> edges;
  const auto& edge_list = require(doc, "edges");
  if (!edge_list.is_array()) bad_scenario("'edges' must be an array");
  for (const auto& e : edge_list) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      bad_scenario("each edge must be a pair of vertex indices");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }

  std::vector<std::vector<int>> coloring;
  const auto& classes = require(doc, "coloring");
  if (!classes.is_array()) bad_scenario("'coloring' must be an array of vertex lists");
  for (const auto& cls : classes) {
    if (!cls.is_array()) bad_scenario("each colour class must be an array");
    auto& out = coloring.emplace_back();
    for (const auto& v : cls) {
      if (!v.is_number_integer()) bad_scenario("colour classes hold vertex indices");
      out.push_back(v.get<int>());
    }
  }

  NoiseModel noise;
  noise.lambda = number_field(doc, "lambda");
  noise.gamma = number_field(doc, "gamma");
  const auto& t = require(doc, "T");
  if (t.is_string() && t.get<std::string>() == "inf") {
    noise.memory_lifetime = std::numeric_limits<double>::infinity();
  } else if (t.is_number()) {
    noise.memory_lifetime = t.get<double>();
  } else {
    bad_scenario("'T' must be a number or \"inf\"");
  }
  noise.validate();

  ScenarioFile file{ColoredGraph::create(vertices, std::move(edges), std::move(coloring)), noise,
                    std::nullopt, std::nullopt, std::nullopt};
  if (doc.contains("p")) file.p = number_field(doc, "p");
  if (doc.contains("w")) file.w = int_field(doc, "w");
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    if (!g.is_object()) bad_scenario("'grid' must be an object");
    const auto& vary = require(g, "vary");
    ScenarioGrid grid;
    if (vary == "p") {
      grid.axis = RateAxis::kP;
      const double from = number_field(g, "from");
      const double to = number_field(g, "to");
      const int points = int_field(g, "points");
      if (points < 1) bad_scenario("grid needs at least one point");
      if (!(from > 0.0 && to <= 1.0 && from <= to)) bad_scenario("p grid must satisfy 0 < from <= to <= 1");
      for (int i = 0; i < points; ++i) {
        grid.ps.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
      }
    } else if (vary == "w") {
      grid.axis = RateAxis::kW;
      const int from = int_field(g, "from");
      const int to = int_field(g, "to");
      if (from < 1 || to < from) bad_scenario("w grid must satisfy 1 <= from <= to");
      for (int w = from; w <= to; ++w) grid.ws.push_back(w);
    } else {
      bad_scenario("grid 'vary' must be \"p\" or \"w\"");
    }
    file.grid = std::move(grid);
  }
  return file;
}

}  // namespace scanwin
