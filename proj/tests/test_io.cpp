#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "scanwin/error.hpp"
#include "scanwin/io.hpp"

using namespace scanwin;

namespace {

json square_doc() {
  return json::parse(R"({"vertices": 4, "edges": [[0,1],[1,2],[2,3],[3,0]],
                         "coloring": [[0,2],[1,3]], "lambda": 0.5, "T": 1000, "gamma": 0})");
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("numbers print exactly") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(30.0) == "30");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("csv documents carry the manifest") {
  RunManifest m;
  m.subcommand = "sweep";
  m.parameters = {{"s", 4}};
  m.outputs = {"out.csv"};
  const auto text = csv_document(m, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
  CHECK(first_line(text).rfind("# manifest: {", 0) == 0);
  const auto manifest = json::parse(first_line(text).substr(12));
  CHECK(manifest["subcommand"] == "sweep");
  CHECK(manifest["parameters"]["s"] == 4);
  CHECK(manifest["seed"].is_null());
  CHECK(manifest["version"] == version());
  CHECK(text.substr(text.find('\n') + 1) == "a,b\n1,2\n3,4\n");
}

TEST_CASE("window stats json") {
  WindowStats st;
  st.w = 3;
  st.s = 2;
  st.p = 0.5;
  st.expectation = 5.0;
  st.patterns = enumerate_patterns(3, 2);
  st.distribution = {2.0 / 3, 1.0 / 3};
  const auto j = to_json(st, "solver");
  CHECK(j["method"] == "solver");
  CHECK_FALSE(j.contains("variance"));
  CHECK(j["distribution"][1]["pattern"] == "101");
  CHECK(j["distribution"][1]["prob"].get<double>() == 1.0 / 3);
  st.variance = 2.0;
  st.second_moment = 27.0;
  CHECK(to_json(st, "solver")["variance"] == 2.0);

  const auto inf = to_json(InfiniteWindowStats{4, 0.5, 8.0, 8.0});
  CHECK(inf["w"] == "inf");
  CHECK(inf["variance"] == 8.0);
}

TEST_CASE("rate rows") {
  const std::vector<RateRow> rows{{0.05, 7, 123.5, 0.2, Feasibility::kFeasible},
                                  {0.06, 0, std::numeric_limits<double>::quiet_NaN(), 0.3,
                                   Feasibility::kInfeasible}};
  RunManifest m;
  m.subcommand = "bqc";
  const auto csv = rate_rows_csv(rows, RateAxis::kP, m);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "p,w_max,expected_time,p_av,feasible,status");
  std::getline(in, line);
  CHECK(line == "0.050000000000000003,7,123.5,0.20000000000000001,true,feasible");
  std::getline(in, line);
  CHECK(line == "0.059999999999999998,0,nan,0.29999999999999999,false,infeasible");

  const auto j = rate_rows_json(rows, RateAxis::kW);
  CHECK(j[0]["w"] == 7);
  CHECK(j[0]["p_max"] == 0.05);
  CHECK(j[1]["expected_time"].is_null());
  CHECK(j[1]["feasible"] == false);
}

TEST_CASE("scenario parsing") {
  auto doc = square_doc();
  const auto sc = parse_scenario(doc);
  CHECK(sc.graph.vertex_count() == 4);
  CHECK(sc.noise.memory_lifetime == 1000.0);
  CHECK_FALSE(sc.p.has_value());
  CHECK_FALSE(sc.grid.has_value());

  doc["T"] = "inf";
  doc["p"] = 0.07;
  doc["w"] = 6;
  doc["grid"] = {{"vary", "p"}, {"from", 0.04}, {"to", 0.1}, {"points", 100}};
  const auto full = parse_scenario(doc);
  CHECK(std::isinf(full.noise.memory_lifetime));
  CHECK(*full.p == 0.07);
  CHECK(*full.w == 6);
  REQUIRE(full.grid.has_value());
  CHECK(full.grid->ps.size() == 100);
  CHECK(full.grid->ps.front() == 0.04);
  CHECK(full.grid->ps.back() == doctest::Approx(0.1).epsilon(1e-15));

  doc["grid"] = {{"vary", "w"}, {"from", 4}, {"to", 15}};
  const auto ws = parse_scenario(doc);
  CHECK(ws.grid->axis == RateAxis::kW);
  CHECK(ws.grid->ws.size() == 12);
}

TEST_CASE("malformed scenarios") {
  const auto fails = [](json doc) {
    try {
      parse_scenario(doc);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kInvalidArgument;
    }
    return false;
  };
  auto doc = square_doc();
  doc.erase("lambda");
  CHECK(fails(doc));
  doc = square_doc();
  doc["T"] = "forever";
  CHECK(fails(doc));
  doc = square_doc();
  doc["coloring"] = {{0, 1}, {2, 3}};
  CHECK(fails(doc));
  doc = square_doc();
  doc["edges"] = {{0, 1, 2}};
  CHECK(fails(doc));
  doc = square_doc();
  doc["gamma"] = 0.7;
  CHECK(fails(doc));
  doc = square_doc();
  doc["grid"] = {{"vary", "T"}};
  CHECK(fails(doc));
}
