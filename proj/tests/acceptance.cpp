#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "obstructo/linalg.hpp"
#include "obstructo/parser.hpp"
#include "obstructo/reps.hpp"
#include "obstructo/scenarios.hpp"
#include "support.hpp"

using namespace obstructo;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const Check* find_check(const ScenarioReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.id.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

bool residual_is(const ScenarioReport& r, const std::string& prefix, const std::string& text) {
  const Check* c = find_check(r, prefix);
  return c && c->pass && std::get<std::string>(c->residual) == text;
}

std::string failing(const ScenarioReport& r) {
  for (const auto& c : r.checks)
    if (!c.pass) return r.scenario + ": " + c.id;
  return "";
}

Outcome groenewold_anticommutator() {
  auto r = run_groenewold({false, 12, 1.0});
  bool ok = residual_is(r, "anti-commutator rule", "(3/4)*hbar^2");
  return {ok, "residual " + std::get<std::string>(find_check(r, "anti-commutator rule")->residual)};
}

Outcome groenewold_cubic() {
  auto r = run_groenewold({false, 12, 1.0});
  bool ok = residual_is(r, "cubic relation:", "-(1/3)*hbar^2") &&
            find_check(r, "cubic relation left side")->pass && find_check(r, "cubic relation right side")->pass;
  return {ok, "residual " + std::get<std::string>(find_check(r, "cubic relation:")->residual)};
}

Outcome quadratic_element() {
  auto qe = solve_quadratic_element(12);
  bool ok = qe.upper_band && qe.lower_band && qe.diagonal && qe.off_band_zero && qe.max_band_error < 1e-10 &&
            qe.closure_unique && qe.forced_epsilon.is_zero();
  std::ostringstream os;
  os << "band error " << qe.max_band_error << ", forced epsilon " << qe.forced_epsilon.to_string();
  return {ok, os.str()};
}

Outcome sphere() {
  bool ok = true;
  std::string detail;
  for (unsigned two_j : {1u, 2u, 3u, 4u, 5u}) {
    SphereOptions o;
    o.two_j = two_j;
    auto r = run_sphere(o);
    bool this_ok = r.all_pass() && r.verdict() == Verdict::OBSTRUCTED &&
                   residual_is(r, "constraint s^2 = a^2 hbar^2 (j(j+1) - 3/4)", "0") &&
                   residual_is(r, "constraint s^2 = a^2 hbar^2 (j(j+1) - 9/4)", "0") &&
                   residual_is(r, "difference of the two values", "(3/2)*hbar^2*a^2") &&
                   find_check(r, "spin matrices: first")->pass && find_check(r, "spin matrices: second")->pass;
    if (!this_ok) detail += " j=" + spin_text(two_j) + " failed (" + failing(r) + ")";
    ok = ok && this_ok;
  }
  return {ok, ok ? "j = 1/2 .. 5/2, difference (3/2)*hbar^2*a^2" : detail};
}

Outcome cylinder() {
  auto r = run_cylinder();
  bool ok = r.all_pass() && r.verdict() == Verdict::OBSTRUCTED &&
            residual_is(r, "bracket relation residual", "2*hbar^2*S") &&
            find_check(r, "residual independent of c")->pass &&
            find_check(r, "position family: (Q1)")->pass;
  return {ok, "residual " + std::get<std::string>(find_check(r, "bracket relation residual")->residual) + " " +
                  failing(r)};
}

Outcome rplus() {
  auto r = run_rplus(8);
  bool ok = r.all_pass() && r.verdict() == Verdict::CONSISTENT;
  return {ok, std::to_string(r.checks.size()) + " checks " + failing(r)};
}

Outcome torus() {
  auto r = run_torus();
  bool ok = r.all_pass() && r.verdict() == Verdict::CONSISTENT;
  std::ostringstream os;
  os << "A-A+ " << std::get<double>(find_check(r, "A- A+")->residual) << " " << failing(r);
  return {ok, os.str()};
}

Outcome prequantization() {
  auto sp = make_space("r2n");
  auto a = verify_prequantization(sp, "vanhove", 5);
  auto b = verify_prequantization(sp, "position", 5);
  bool ok = a.all_pass() && b.all_pass();
  return {ok, find_check(a, "(Q1)")->id + "; " + find_check(b, "(Q1)")->id + " " + failing(a) + failing(b)};
}

Outcome structure() {
  std::vector<std::size_t> dims;
  for (const char* n : {"r2n", "s2", "tstar_s1"}) {
    auto sp = make_space(n);
    dims.push_back(normalizer(sp, basic_algebra_basis(sp), 4).size());
  }
  bool ok = dims == std::vector<std::size_t>{6, 4, 4};

  auto s2 = make_space("s2");
  auto basis = basic_algebra_basis(s2);
  auto monos = reduced_monomials(*s2->ring, 3);
  MonomialIndex idx;
  for (const auto& m : monos) idx.index(m);
  linalg::Matrix lap(monos.size(), linalg::Vector(monos.size()));
  for (std::size_t k = 0; k < monos.size(); ++k) {
    auto f = PoissonPoly::monomial(s2, monos[k]);
    auto img = symplectic_laplacian(basis, f);
    for (const auto& [row, c] : idx.coordinates(img.poly(), s2->instance))
      if (row < monos.size()) lap[row][k] = c;
      else ok = false;
  }
  auto kernel = linalg::nullspace(lap, monos.size());
  ok = ok && kernel.size() == 1;
  for (std::size_t k = 0; ok && k < monos.size(); ++k)
    ok = kernel[0][k].is_zero() == (total_degree(monos[k]) != 0);
  auto S = [&](const char* n) { return PoissonPoly::generator(s2, n); };
  for (const auto& f : {S("S1"), S("S2"), S("S3")}) ok = ok && symplectic_laplacian(basis, f) == ParamScalar(2) * f;
  for (const auto& f : {S("S1") * S("S2"), S("S1") * S("S3"), S("S2") * S("S3"), S("S1") * S("S1") - S("S2") * S("S2"),
                        S("S1") * S("S1") + S("S2") * S("S2") - ParamScalar(2) * S("S3") * S("S3")})
    ok = ok && symplectic_laplacian(basis, f) == ParamScalar(6) * f;

  struct Row {
    const char* space;
    bool d1, d2;
  };
  for (auto row : {Row{"r2n", true, false}, Row{"s2", false, true}, Row{"tstar_s1", true, true},
                   Row{"tstar_rplus", false, false}}) {
    auto mk = obstruction_markers(make_space(row.space), 4);
    ok = ok && mk.d1 == row.d1 && mk.d2 == row.d2;
    bool obstructed = mk.d1 || mk.d2;
    std::string scenario = row.space == std::string("r2n") ? "groenewold"
                           : row.space == std::string("s2") ? "sphere"
                           : row.space == std::string("tstar_s1") ? "cylinder"
                                                                  : "rplus";
    ok = ok && obstructed == (expected_verdict(scenario) == Verdict::OBSTRUCTED);
  }
  return {ok, "normalizer dims " + std::to_string(dims[0]) + "/" + std::to_string(dims[1]) + "/" +
                  std::to_string(dims[2]) + ", laplacian kernel " + std::to_string(kernel.size())};
}

Outcome properties() {
  std::mt19937_64 rng(2024);
  std::size_t jacobi_bad = 0, roundtrip_bad = 0, confluence_bad = 0;
  for (const auto& name : testing::all_spaces()) {
    auto sp = make_space(name);
    for (int t = 0; t < 200; ++t) {
      auto f = testing::random_poly(sp, rng, 3, 3), g = testing::random_poly(sp, rng, 3, 3),
           h = testing::random_poly(sp, rng, 3, 3);
      if (!jacobi_residual(f, g, h).is_zero()) ++jacobi_bad;
    }
    for (int t = 0; t < 100; ++t) {
      auto f = testing::random_poly(sp, rng, 4, 5);
      auto back = parse_expr(f.to_string(), sp);
      if (back != f || back.to_string() != f.to_string()) ++roundtrip_bad;
    }
  }
  for (const char* name : {"weyl", "su2", "e2"})
    if (!confluence_probe(*make_algebra(name), 500, 0xacce55).pass) ++confluence_bad;
  bool ok = jacobi_bad == 0 && roundtrip_bad == 0 && confluence_bad == 0;
  return {ok, "jacobi failures " + std::to_string(jacobi_bad) + ", round-trip failures " +
                  std::to_string(roundtrip_bad) + ", confluence failures " + std::to_string(confluence_bad)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"anti-commutator residual (3/4) hbar^2", 1, groenewold_anticommutator},
      {"cubic residual -(1/3) hbar^2", 1, groenewold_cubic},
      {"quadratic element bands and epsilon = 0 at N = 12", 2, quadratic_element},
      {"sphere constraints for j = 1/2 .. 5/2", 5, sphere},
      {"cylinder residual 2 hbar^2 S and position family", 2, cylinder},
      {"half-line (Q1) residuals vanish up to degree 8", 2, rplus},
      {"torus grid identities at M = 256", 20, torus},
      {"Van Hove and position prequantizations up to degree 5", 5, prequantization},
      {"normalizers, symplectic Laplacian and markers", 5, structure},
      {"Jacobi, confluence and round-trip properties", 10, properties},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& c = criteria[k];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && secs < c.budget_seconds;
    if (!pass) ++failures;
    std::ostringstream t;
    t.precision(3);
    t << secs;
    std::cout << (pass ? "PASS " : "FAIL ") << (k + 1) << ". " << c.name << " [" << o.detail << "; " << t.str()
              << " s of " << c.budget_seconds << " s]\n";
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
