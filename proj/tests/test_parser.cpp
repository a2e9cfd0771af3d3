#include <doctest.h>

#include "obstructo/error.hpp"
#include "obstructo/parser.hpp"
#include "support.hpp"

using namespace obstructo;

TEST_CASE("parsing examples") {
  auto r2 = make_space("r2n");
  auto f = parse_expr("q^2*p + (1/3)*hbar*q", r2);
  CHECK(f.terms().size() == 2);
  CHECK(f == PoissonPoly::generator(r2, "q").pow(2) * PoissonPoly::generator(r2, "p") +
                 ParamScalar::frac(1, 3) * ParamScalar::hbar() * PoissonPoly::generator(r2, "q"));
  CHECK(parse_expr("{p, q}", r2) == PoissonPoly(r2, ParamScalar(1)));
  CHECK(parse_expr("q1*p1", r2) == parse_expr("q*p", r2));
  CHECK(parse_expr("-q^2/4", r2) == ParamScalar::frac(-1, 4) * PoissonPoly::generator(r2, "q").pow(2));
  CHECK(parse_expr("2 - -q", r2) == parse_expr("2 + q", r2));
  CHECK(parse_expr("(1/2 + i*eta)*q", r2).to_string() == "(1/2)*q + i*eta*q");

  auto s2 = make_space("s2");
  auto S = [&](const char* n) { return PoissonPoly::generator(s2, n); };
  CHECK(parse_expr("{S1^2 - S2^2, S1*S2}", s2) == bracket(S("S1").pow(2) - S("S2").pow(2), S("S1") * S("S2")));
  CHECK(parse_expr("S3^2", s2).to_string() == "s^2 - S1^2 - S2^2");

  auto cyl = make_space("tstar_s1");
  CHECK(parse_expr("sin_theta^3", cyl) ==
        PoissonPoly::generator(cyl, "sin_theta") -
            PoissonPoly::generator(cyl, "cos_theta").pow(2) * PoissonPoly::generator(cyl, "sin_theta"));
}

TEST_CASE("parse errors carry offsets") {
  auto r2 = make_space("r2n");
  try {
    parse_expr("q + * p", r2);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse_expr("q^x", r2);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(parse_expr("{q, p", r2), SyntaxError);
  CHECK_THROWS_AS(parse_expr("q / p", r2), SyntaxError);
  CHECK_THROWS_AS(parse_expr("q / 0", r2), SyntaxError);
  CHECK_THROWS_AS(parse_expr("q)", r2), SyntaxError);
  CHECK_THROWS_AS(parse_expr("", r2), SyntaxError);
  CHECK_THROWS_WITH_AS(parse_expr("q + S1", r2), doctest::Contains("S1"), UnknownSymbol);
  CHECK_THROWS_AS(parse_expr("q2", make_space("r2n", 1)), UnknownSymbol);
}

TEST_CASE("print then parse round-trips on 100 random expressions per space") {
  std::mt19937_64 rng(51);
  for (const auto& name : testing::all_spaces()) {
    auto sp = make_space(name, name == "r2n" ? 2 : 1);
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
      auto f = testing::random_poly(sp, rng, 4, 5);
      std::string printed = f.to_string();
      auto back = parse_expr(printed, sp);
      if (back != f || back.to_string() != printed) ++failures;
    }
    CHECK_MESSAGE(failures == 0, name);
  }
}
