#include <doctest.h>

#include "obstructo/error.hpp"
#include "obstructo/scalar.hpp"

using namespace obstructo;

TEST_CASE("gaussian rationals") {
  GaussRat a(Rational(1, 2), Rational(3)), b(Rational(-2), Rational(1, 3));
  CHECK(a * b == GaussRat(Rational(-2), Rational(-35, 6)));
  CHECK((a / b) * b == a);
  CHECK(GaussRat::i() * GaussRat::i() == GaussRat(-1));
  CHECK(a.conj().conj() == a);
  CHECK_THROWS_AS(a / GaussRat(), InexactDivision);
}

TEST_CASE("parameter scalars print in canonical form") {
  CHECK(ParamScalar::frac(-1, 3) * ParamScalar::hbar(2) == ParamScalar::frac(-1, 3) * ParamScalar::hbar() * ParamScalar::hbar());
  CHECK((ParamScalar::frac(-1, 3) * ParamScalar::hbar(2)).to_string() == "-(1/3)*hbar^2");
  CHECK((ParamScalar::frac(3, 2) * ParamScalar::param(Param::a, 2) * ParamScalar::hbar(2)).to_string() ==
        "(3/2)*hbar^2*a^2");
  CHECK(ParamScalar().to_string() == "0");
  CHECK(ParamScalar::i().to_string() == "i");
}

TEST_CASE("division and substitution") {
  ParamScalar x = ParamScalar(3) * ParamScalar::hbar(2) + ParamScalar::hbar() * ParamScalar::param(Param::a);
  CHECK(x.divided_by(Param::hbar) == ParamScalar(3) * ParamScalar::hbar() + ParamScalar::param(Param::a));
  CHECK_THROWS_AS(x.divided_by(Param::hbar, 2), InexactDivision);
  CHECK(x.substitute({{Param::hbar, GaussRat(2)}}) == ParamScalar(12) + ParamScalar(2) * ParamScalar::param(Param::a));
  auto v = x.evaluate({{Param::hbar, 0.5}, {Param::a, 4.0}});
  CHECK(v.real() == doctest::Approx(2.75));
  CHECK_THROWS_AS(x.evaluate({{Param::hbar, 0.5}}), UnboundParameter);
}

TEST_CASE("parameter names") {
  CHECK(param_from_name("eta") == Param::eta);
  CHECK(param_name(Param::nu) == "nu");
  CHECK_FALSE(try_param_from_name("zeta").has_value());
  CHECK_THROWS_AS(param_from_name("zeta"), UnknownParameter);
}
