#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "obstructo/diffop.hpp"
#include "obstructo/opalg.hpp"
#include "obstructo/poisson.hpp"

namespace obstructo {

enum class Source { PAPER, DERIVED, TRIVIAL };
enum class Verdict { OBSTRUCTED, CONSISTENT, INCONCLUSIVE };

std::string_view source_name(Source s);
std::string_view verdict_name(Verdict v);

struct Check {
  std::string id;
  std::variant<std::string, double> residual;
  bool pass = false;
  Source source = Source::DERIVED;
  /// Exact, nonzero residual forced by the quantization axioms.
  bool obstruction = false;
};

using ParamValue = std::variant<std::string, double, long, bool>;

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<Check> checks;

  /// No checks: INCONCLUSIVE. A passing obstruction check: OBSTRUCTED.
  /// Otherwise CONSISTENT when every check passes, else INCONCLUSIVE.
  Verdict verdict() const;
  bool all_pass() const;
};

/// Verdict the scenario is expected to reach, used for exit status.
Verdict expected_verdict(const std::string& scenario);

struct GroenewoldOptions {
  bool matrix = true;
  std::size_t truncation = 12;
  double hbar = 1.0;
};
ScenarioReport run_groenewold(const GroenewoldOptions& opt = {});

struct SphereOptions {
  unsigned two_j = 2;
  bool matrix = true;
  double c_value = 0.37;  // numeric c for the matrix cross-check; c cancels
  double tolerance = 1e-9;
};
ScenarioReport run_sphere(const SphereOptions& opt = {});

struct CylinderOptions {
  bool include_c = true;
  unsigned degree_cap = 4;
  double nu = 0.25;
  std::size_t truncation = 12;
};
ScenarioReport run_cylinder(const CylinderOptions& opt = {});

ScenarioReport run_rplus(unsigned degree_cap = 8);

struct TorusOptions {
  std::size_t grid = 256;
  double hbar = 1.0;
  double tolerance = 1e-10;
  double order_window = 0.3;
};
ScenarioReport run_torus(const TorusOptions& opt = {});

/// Presets: "vanhove" (r2n(1)), "position" (r2n(1), polynomials of degree
/// <= 1 in p), "cylinder-position" (tstar_s1, degree <= 1 in l), "torus" (t2).
/// Parameters eta and nu stay formal.
ScenarioReport verify_prequantization(const SpacePtr& space, const std::string& preset, unsigned degree_cap);

struct RunConfig {
  std::vector<std::string> scenarios = {"groenewold", "sphere", "cylinder", "rplus", "torus"};
  std::vector<unsigned> two_j = {2};
  double hbar = 1.0;
  std::size_t truncation = 12;
  std::size_t grid = 256;
  unsigned rplus_cap = 8;
  unsigned cylinder_cap = 4;
  double nu = 0.25;
  bool include_c = true;
  bool matrix = true;
  double tolerance = 1e-10;
};

std::vector<ScenarioReport> run_all(const RunConfig& config);

/// Quantum residual (i/hbar)[Q f, Q g] - Q({f,g}) for a prequantization
/// formula realized as differential operators.
struct PrequantizationMap {
  SpacePtr space;
  DiffRingPtr target;
  std::function<DiffOp(const PoissonPoly&)> apply;
};
PrequantizationMap prequantization_preset(const SpacePtr& space, const std::string& preset);

/// Copies the terms of f into `target`, matching generators by name.
/// Exponents of generators absent from `target` must be zero.
CommPoly transfer(const CommPoly& f, const RingPtr& target);

/// Parses "1/2", "1", "3/2" into 2j.
unsigned parse_spin(const std::string& text);
std::string spin_text(unsigned two_j);

}  // namespace obstructo
