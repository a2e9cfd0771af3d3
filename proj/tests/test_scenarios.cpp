#include <doctest.h>

#include <algorithm>

#include "obstructo/error.hpp"
#include "obstructo/scenarios.hpp"

using namespace obstructo;

namespace {

const Check& find_check(const ScenarioReport& r, const std::string& prefix) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(),
                         [&](const Check& c) { return c.id.rfind(prefix, 0) == 0; });
  REQUIRE_MESSAGE(it != r.checks.end(), prefix);
  return *it;
}

std::string residual_text(const Check& c) { return std::get<std::string>(c.residual); }

}  // namespace

TEST_CASE("verdict rule") {
  ScenarioReport r;
  CHECK(r.verdict() == Verdict::INCONCLUSIVE);
  r.checks.push_back({"a", 0.0, true, Source::TRIVIAL, false});
  CHECK(r.verdict() == Verdict::CONSISTENT);
  r.checks.push_back({"b", 1.0, false, Source::PAPER, false});
  CHECK(r.verdict() == Verdict::INCONCLUSIVE);
  r.checks.push_back({"c", std::string("2*hbar^2"), true, Source::PAPER, true});
  CHECK(r.verdict() == Verdict::OBSTRUCTED);
}

TEST_CASE("groenewold") {
  auto r = run_groenewold();
  CHECK(r.all_pass());
  CHECK(r.verdict() == Verdict::OBSTRUCTED);
  CHECK(residual_text(find_check(r, "anti-commutator rule")) == "(3/4)*hbar^2");
  CHECK(residual_text(find_check(r, "cubic relation:")) == "-(1/3)*hbar^2");
  auto sym = run_groenewold({false, 12, 1.0});
  CHECK(sym.checks.size() < r.checks.size());
  CHECK_THROWS_AS(run_groenewold({true, 9, 1.0}), TruncationTooSmall);
}

TEST_CASE("sphere constraints for several spins") {
  for (unsigned two_j : {1u, 2u, 3u, 4u, 5u}) {
    SphereOptions o;
    o.two_j = two_j;
    auto r = run_sphere(o);
    CAPTURE(two_j);
    CHECK(r.all_pass());
    CHECK(r.verdict() == Verdict::OBSTRUCTED);
    CHECK(residual_text(find_check(r, "difference of the two values")) == "(3/2)*hbar^2*a^2");
  }
  SphereOptions half;
  half.two_j = 1;
  CHECK(find_check(run_sphere(half), "j = 1/2 forces").pass);
  SphereOptions zero;
  zero.two_j = 0;
  CHECK(run_sphere(zero).verdict() == Verdict::CONSISTENT);
}

TEST_CASE("cylinder residual") {
  auto r = run_cylinder();
  CHECK(r.all_pass());
  CHECK(r.verdict() == Verdict::OBSTRUCTED);
  CHECK(residual_text(find_check(r, "bracket relation residual")) == "2*hbar^2*S");
  CHECK(find_check(r, "residual independent of c").pass);
  CylinderOptions no_c;
  no_c.include_c = false;
  CHECK(run_cylinder(no_c).verdict() == Verdict::OBSTRUCTED);
}

TEST_CASE("rplus is consistent") {
  auto r = run_rplus(8);
  CHECK(r.all_pass());
  CHECK(r.verdict() == Verdict::CONSISTENT);
  CHECK_THROWS_AS(run_rplus(1), InvalidArgument);
}

TEST_CASE("torus is consistent at second order") {
  auto r = run_torus();
  CHECK(r.all_pass());
  CHECK(r.verdict() == Verdict::CONSISTENT);
  CHECK(std::get<double>(find_check(r, "A- A+").residual) < 1e-10);
  TorusOptions bad;
  bad.grid = 100;
  CHECK_THROWS_AS(run_torus(bad), GridTooSmall);
}

TEST_CASE("prequantization presets") {
  auto r2 = make_space("r2n");
  CHECK(verify_prequantization(r2, "vanhove", 5).all_pass());
  CHECK(verify_prequantization(r2, "position", 5).all_pass());
  CHECK(verify_prequantization(make_space("tstar_s1"), "cylinder-position", 4).all_pass());
  CHECK(verify_prequantization(make_space("t2"), "torus", 2).all_pass());
  CHECK_THROWS_AS(verify_prequantization(make_space("s2"), "vanhove", 2), IncompatiblePreset);
  CHECK_THROWS_AS(prequantization_preset(r2, "weyl"), InvalidArgument);

  // the position formula fails (Q1) once quadratic momenta are admitted
  auto map = prequantization_preset(r2, "position");
  CHECK_THROWS_AS(map.apply(PoissonPoly::generator(r2, "p").pow(2)), InvalidArgument);
}

TEST_CASE("dropping a Van Hove term is caught") {
  auto r2 = make_space("r2n");
  auto good = prequantization_preset(r2, "vanhove");
  auto p = PoissonPoly::generator(r2, "p"), q = PoissonPoly::generator(r2, "q");
  auto residual = quantum_bracket(good.apply(p), good.apply(q)) - good.apply(bracket(p, q));
  CHECK(residual.is_zero());
  // dropping the -p f_p term breaks (Q1) on {p, q p}
  auto f = q * p;
  auto bad = [&](const PoissonPoly& g) { return good.apply(g) + DiffOp::multiplication(good.target, transfer(p.poly(), good.target->ring) * transfer(g.poly().partial(1), good.target->ring)); };
  CHECK_FALSE((quantum_bracket(bad(p), bad(f)) - bad(bracket(p, f))).is_zero());
}

TEST_CASE("run_all defaults and spin parsing") {
  RunConfig c;
  c.two_j = {1, 2, 3};
  c.scenarios = {"sphere"};
  auto reports = run_all(c);
  CHECK(reports.size() == 3);
  for (const auto& r : reports) CHECK(r.verdict() == Verdict::OBSTRUCTED);
  CHECK(parse_spin("3/2") == 3);
  CHECK(parse_spin("2") == 4);
  CHECK(spin_text(3) == "3/2");
  CHECK_THROWS_AS(parse_spin("1/3"), InvalidArgument);
  CHECK_THROWS_AS(parse_spin("-1"), InvalidArgument);
  CHECK_THROWS_AS(parse_spin("half"), InvalidArgument);
  c.scenarios = {"klein"};
  CHECK_THROWS_AS(run_all(c), InvalidArgument);
}

TEST_CASE("default run reaches the expected verdicts") {
  RunConfig c;
  auto reports = run_all(c);
  REQUIRE(reports.size() == 5);
  std::vector<Verdict> expect = {Verdict::OBSTRUCTED, Verdict::OBSTRUCTED, Verdict::OBSTRUCTED, Verdict::CONSISTENT,
                                 Verdict::CONSISTENT};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(reports[k].verdict() == expect[k]);
    CHECK(expected_verdict(reports[k].scenario) == expect[k]);
  }
}

TEST_CASE("transfer between rings") {
  auto r2 = make_space("r2n");
  auto f = (PoissonPoly::generator(r2, "q").pow(2) + PoissonPoly::generator(r2, "p")).poly();
  auto target = make_space("r2n", 1)->ring;
  CHECK(transfer(f, target) == f);
  CHECK_THROWS_AS(transfer(f, make_space("s2")->ring), RingMismatch);
}
