#include <doctest.h>

#include <cmath>
#include <numbers>

#include "obstructo/error.hpp"
#include "obstructo/grid.hpp"

using namespace obstructo;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

double psi(double x) { return std::exp(-8.0 * (x - 0.5) * (x - 0.5)); }
double dpsi(double x) { return -16.0 * (x - 0.5) * psi(x); }

cd zak(double x, double y, double (*f)(double)) {
  cd s = 0;
  for (int m = -12; m <= 12; ++m) s += f(x + m) * std::exp(cd(0, -2 * kPi * m * y));
  return s;
}

double torus_dx_error(std::size_t M) {
  TorusGrid g(M, 1.0);
  Field phi = g.zak_inverse(psi);
  Field d = g.dx(phi);
  Field exact = g.sample([](double x, double y) { return zak(x, y, dpsi); });
  return (d - exact).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("inverse Zak transform is quasi-periodic") {
  for (double x : {0.1, 0.7})
    for (double y : {0.0, 0.3, 0.85}) {
      CHECK(std::abs(zak(x + 1, y, psi) - std::exp(cd(0, 2 * kPi * y)) * zak(x, y, psi)) < 1e-12);
      CHECK(std::abs(zak(x, y + 1, psi) - zak(x, y, psi)) < 1e-12);
    }
  TorusGrid g(64, 1.0);
  Field phi = g.zak_inverse(psi);
  Field exact = g.sample([](double x, double y) { return zak(x, y, psi); });
  CHECK((phi - exact).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("twisted x derivative converges at second order, including across the seam") {
  double coarse = torus_dx_error(64), fine = torus_dx_error(128);
  CHECK(std::log2(coarse / fine) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("periodic y derivative") {
  TorusGrid g(64, 1.0);
  Field f = g.sample([](double, double y) { return cd(std::sin(2 * kPi * y)); });
  Field d = g.dy(f);
  double h = g.spacing();
  // centered difference of sin is exactly sin(2 pi h)/h cos
  Field expect = g.sample([h](double, double y) { return cd(std::sin(2 * kPi * h) / h * std::cos(2 * kPi * y)); });
  CHECK((d - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("observables act linearly") {
  TorusGrid g(64, 0.5);
  GridObservable cx{"cx", [](double x, double) { return std::cos(2 * kPi * x); },
                    [](double x, double) { return -2 * kPi * std::sin(2 * kPi * x); },
                    [](double, double) { return 0.0; }};
  Field phi = g.zak_inverse(psi);
  Field a = g.apply(cx, phi + phi);
  CHECK((a - 2.0 * g.apply(cx, phi)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(TorusGrid(60, 1.0), GridTooSmall);
  CHECK_THROWS_AS(TorusGrid(32, 1.0), GridTooSmall);
}

TEST_CASE("line grid operators") {
  LineGrid g(256, 1.0);
  CHECK(g.x(0) == -4.0);
  Field v = g.sample([](double x) { return cd(std::exp(-x * x)); });
  Field s = g.shift(v, 32);  // one unit
  Field expect = g.sample([](double x) { return cd(std::exp(-(x + 1) * (x + 1))); });
  CHECK(g.central_sup(s - expect) < 1e-14);
  Field a = g.a(+1, v);
  Field a_expect = g.sample([](double x) {
    return std::exp(cd(0, 2 * kPi * x)) * cd(1, -2 * kPi * x) * std::exp(-x * x);
  });
  CHECK(g.central_sup(a - a_expect) < 1e-14);
  // A- undoes the phase of A+ and leaves the modulus factor 1 + 4 pi^2 x^2
  Field aa = g.a(-1, a);
  Field aa_expect = g.sample([](double x) { return cd((1 + 4 * kPi * kPi * x * x) * std::exp(-x * x)); });
  CHECK(g.central_sup(aa - aa_expect) < 1e-12);
  CHECK_THROWS_AS(LineGrid(100, 1.0), GridTooSmall);
}
