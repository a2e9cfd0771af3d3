#include <doctest.h>

#include <random>

#include "obstructo/diffop.hpp"
#include "obstructo/error.hpp"

using namespace obstructo;

namespace {

CommPoly random_coeff(const DiffRingPtr& r, std::mt19937_64& rng, unsigned degree) {
  std::uniform_int_distribution<long> c(-3, 3);
  std::uniform_int_distribution<unsigned> d(0, degree);
  std::uniform_int_distribution<std::size_t> g(0, r->ring->size() - 1);
  CommPoly out(r->ring);
  for (int t = 0; t < 3; ++t) {
    Monomial m = r->ring->unit();
    for (unsigned k = d(rng); k > 0; --k) ++m[g(rng)];
    out += CommPoly::monomial(r->ring, m, ParamScalar(c(rng)));
  }
  return out;
}

DiffOp random_op(const DiffRingPtr& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> der(0, r->derivations.size() - 1);
  std::uniform_int_distribution<int> order(0, 2);
  DiffOp out(r);
  for (int t = 0; t < 2; ++t) {
    DiffOp term = DiffOp::multiplication(r, random_coeff(r, rng, 2));
    for (int k = order(rng); k > 0; --k) term = term * DiffOp::derivation(r, der(rng));
    out += term;
  }
  return out;
}

}  // namespace

TEST_CASE("composition agrees with applying operators in turn") {
  std::mt19937_64 rng(41);
  for (const auto& r : {phase_plane_ring(), line_ring(), circle_ring(), torus_ring()}) {
    for (int t = 0; t < 25; ++t) {
      auto a = random_op(r, rng), b = random_op(r, rng);
      auto f = random_coeff(r, rng, 3);
      CHECK((a * b).apply(f) == a.apply(b.apply(f)));
      CHECK((a + b).apply(f) == a.apply(f) + b.apply(f));
    }
  }
}

TEST_CASE("canonical commutators") {
  auto r = phase_plane_ring();
  auto q = DiffOp::multiplication(r, r->gen("q"));
  auto dq = DiffOp::derivation(r, 0), dp = DiffOp::derivation(r, 1);
  CHECK(commutator(dq, q) == DiffOp::identity(r));
  CHECK(commutator(dp, q).is_zero());
  CHECK(commutator(dq, dp).is_zero());
  auto circle = circle_ring();
  auto d = DiffOp::derivation(circle, 0);
  auto c = DiffOp::multiplication(circle, circle->gen("cos_theta"));
  CHECK(commutator(d, c) == DiffOp::multiplication(circle, -circle->gen("sin_theta")));
}

TEST_CASE("Leibniz rule for higher derivatives") {
  auto r = line_ring();
  auto q = r->gen("q");
  auto d = DiffOp::derivation(r, 0);
  // d^2 q^2 = q^2 d^2 + 4 q d + 2
  auto lhs = d * d * DiffOp::multiplication(r, q * q);
  auto rhs = DiffOp::multiplication(r, q * q) * d * d + DiffOp::multiplication(r, ParamScalar(4) * q) * d +
             DiffOp::multiplication(r, r->constant(ParamScalar(2)));
  CHECK(lhs == rhs);
}

TEST_CASE("ring mismatch and scalar division") {
  auto a = DiffOp::derivation(line_ring(), 0);
  CHECK_THROWS_AS(a.apply(circle_ring()->gen("cos_theta")), RingMismatch);
  auto r = line_ring();
  auto op = ParamScalar::hbar() * DiffOp::derivation(r, 0);
  CHECK(op.divided_by(Param::hbar) == DiffOp::derivation(r, 0));
  CHECK_THROWS_AS(DiffOp::derivation(r, 0).divided_by(Param::hbar), InexactDivision);
}
