#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "scanwin/approx.hpp"
#include "scanwin/bqc.hpp"
#include "scanwin/closed_forms.hpp"
#include "scanwin/sim.hpp"
#include "scanwin/solver.hpp"

namespace scanwin {

using json = nlohmann::ordered_json;

std::string version();

/// Reproducibility header embedded in every emitted file.
struct RunManifest {
  std::string subcommand;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
};

json to_json(const RunManifest& manifest);

/// Shortest decimal that round-trips ({:.17g} worst case); "nan"/"inf" for
/// non-finite values.
std::string format_number(double x);

/// One CSV document: a "# manifest: {...}" comment line, the header, the rows.
std::string csv_document(const RunManifest& manifest, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

/// `method` names the route that produced the numbers (solver, closed form,
/// small-p limit).
json to_json(const WindowStats& stats, const std::string& method);
json to_json(const InfiniteWindowStats& stats);
json to_json(const ApproxReport& report);
/// Summary statistics and pattern tallies; raw samples go to samples_csv.
json to_json(const SimResult& result);

std::string samples_csv(const SimResult& result, const RunManifest& manifest);

enum class RateAxis { kP, kW };

json rate_rows_json(std::span<const RateRow> rows, RateAxis axis);
std::string rate_rows_csv(std::span<const RateRow> rows, RateAxis axis,
                          const RunManifest& manifest);

/// Sweep grid from a scenario file: {"vary": "p", "from", "to", "points"}
/// (inclusive linspace) or {"vary": "w", "from", "to"} (every integer).
struct ScenarioGrid {
  RateAxis axis = RateAxis::kP;
  std::vector<double> ps;
  std::vector<int> ws;
};

struct ScenarioFile {
  ColoredGraph graph;
  NoiseModel noise;
  std::optional<double> p;
  std::optional<int> w;
  std::optional<ScenarioGrid> grid;
};

/// Parses {vertices, edges, coloring, lambda, T, gamma, p?, w?, grid?}; T may
/// be a number or "inf". Throws Error(kInvalidArgument) on malformed input.
ScenarioFile parse_scenario(const json& doc);

}  // namespace scanwin
