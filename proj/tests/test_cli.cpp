#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "obstructo/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "obstructo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = obstructo::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bracket, reduce and laplacian") {
  auto r = run({"bracket", "--space", "s2", "S1", "S2"});
  CHECK(r.code == 0);
  CHECK(r.out == "-S3\n");
  CHECK(run({"bracket", "--space", "r2n", "--n", "2", "p1", "q1"}).out == "1\n");
  CHECK(run({"reduce", "--space", "tstar_s1", "sin_theta^3"}).out == "sin_theta - cos_theta^2*sin_theta\n");
  CHECK(run({"laplacian", "--space", "s2", "S1*S2"}).out == "6*S1*S2\n");
}

TEST_CASE("structure commands") {
  auto r = run({"normalizer", "--space", "r2n", "--n", "1", "--degree", "4", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["dimension"] == 6);
  CHECK(j["basis"].size() == 6);
  auto m = nlohmann::json::parse(run({"markers", "--space", "tstar_s1", "--format", "json"}).out);
  CHECK(m["D1"] == true);
  CHECK(m["D2"] == true);
  auto rep = nlohmann::json::parse(run({"rep", "--space", "s2", "--spin", "1", "--format", "json", "S3"}).out);
  CHECK(rep["S3"]["dim"] == 3);
  CHECK(rep["S3"]["rows"][0][0][0] == 1.0);
}

TEST_CASE("verify emits the expected verdicts") {
  auto r = run({"verify", "sphere", "--spin", "1", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "OBSTRUCTED");
  auto multi = run({"verify", "sphere", "--spin", "1/2", "--spin", "3/2", "--format", "json"});
  CHECK(nlohmann::json::parse(multi.out).size() == 2);
  CHECK(run({"verify", "rplus", "--degree", "4"}).code == 0);
  CHECK(run({"preq-check", "position", "--degree", "4"}).code == 0);
}

TEST_CASE("config file") {
  const char* path = "obstructo_cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"scenarios": ["groenewold", "rplus"], "rplus_cap": 4, "matrix": false})";
  }
  auto r = run({"verify", "all", "--config", path, "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).size() == 2);
  {
    std::ofstream f(path);
    f << R"({"scenarios": ["rplus"], "bogus": 1})";
  }
  CHECK(run({"verify", "all", "--config", path}).code == 2);
  std::remove(path);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "klein"}).code == 2);
  auto r = run({"reduce", "--space", "s2", "S1 +* S2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("SyntaxError") != std::string::npos);
  CHECK(run({"reduce", "--space", "s2", "q"}).code == 2);
  CHECK(run({"bracket", "--space", "nowhere", "a", "b"}).code == 2);
  CHECK(run({"verify", "sphere", "--spin", "1/3"}).code == 2);
  CHECK(run({"verify", "torus", "--grid", "100"}).code == 2);
  CHECK(run({"preq-check", "vanhove", "--space", "s2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
