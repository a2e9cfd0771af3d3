#include <doctest.h>

#include <json.hpp>

#include "obstructo/error.hpp"
#include "obstructo/report.hpp"

using namespace obstructo;

TEST_CASE("json report follows the schema") {
  ScenarioReport r;
  r.scenario = "demo";
  r.params = {{"grid", 128L}, {"hbar", 1.0}, {"mode", std::string("symbolic")}, {"matrix", true}};
  r.checks.push_back({"exact", std::string("-(1/3)*hbar^2"), true, Source::PAPER, true});
  r.checks.push_back({"numeric", 1.5e-12, true, Source::DERIVED, false});
  auto j = nlohmann::json::parse(emit_report(r, Format::json));
  std::vector<std::string> keys;
  auto ordered = nlohmann::ordered_json::parse(emit_report(r, Format::json));
  for (const auto& [k, v] : ordered.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"scenario", "params", "checks", "verdict"});
  CHECK(j["scenario"] == "demo");
  CHECK(j["params"]["grid"] == 128);
  CHECK(j["params"]["matrix"] == true);
  CHECK(j["checks"][0]["residual"] == "-(1/3)*hbar^2");
  CHECK(j["checks"][0]["source"] == "PAPER");
  CHECK(j["checks"][1]["residual"].is_number());
  CHECK(j["checks"][1].size() == 4);
  CHECK(j["verdict"] == "OBSTRUCTED");
}

TEST_CASE("empty report and text output") {
  ScenarioReport r;
  r.scenario = "empty";
  auto j = nlohmann::json::parse(emit_report(r, Format::json));
  CHECK(j["verdict"] == "INCONCLUSIVE");
  CHECK(j["checks"].empty());
  r.checks.push_back({"x", 0.25, false, Source::TRIVIAL, false});
  auto text = emit_report(r, Format::text);
  CHECK(text.find("FAIL") != std::string::npos);
  CHECK(text.find("verdict INCONCLUSIVE") != std::string::npos);
  CHECK(nlohmann::json::parse(emit_reports({r, r}, Format::json)).is_array());
}

TEST_CASE("matrix emission") {
  Eigen::MatrixXcd m(2, 2);
  m << std::complex<double>(1, 0), std::complex<double>(0, -1), std::complex<double>(0.5, 2), 0;
  auto j = nlohmann::json::parse(emit_matrix(m, Format::json));
  CHECK(j["dim"] == 2);
  CHECK(j["rows"][0][1][1] == -1.0);
  CHECK(j["rows"][1][0][0] == 0.5);
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}
