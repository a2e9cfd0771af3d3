#pragma once

#include <random>

#include "obstructo/opalg.hpp"
#include "obstructo/poisson.hpp"

namespace testing {

using namespace obstructo;

inline ParamScalar random_scalar(std::mt19937_64& rng, bool with_params = true) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4), pick(0, 5);
  Rational re(num(rng), den(rng));
  re.canonicalize();
  Rational im(pick(rng) == 0 ? num(rng) : 0);
  ParamScalar c(GaussRat(re, im));
  if (with_params && pick(rng) == 0) c = c * ParamScalar::hbar();
  if (with_params && pick(rng) == 1) c = c * ParamScalar::param(Param::a, 2);
  return c;
}

/// Sum of up to `terms` random monomials of total degree <= `degree`.
inline PoissonPoly random_poly(const SpacePtr& space, std::mt19937_64& rng, unsigned degree = 3,
                               unsigned terms = 4, bool with_params = true) {
  std::uniform_int_distribution<unsigned> nterms(1, terms), deg(0, degree);
  std::uniform_int_distribution<std::size_t> gen(0, space->ring->size() - 1);
  PoissonPoly out(space);
  for (unsigned t = nterms(rng); t > 0; --t) {
    Monomial m = space->ring->unit();
    for (unsigned d = deg(rng); d > 0; --d) ++m[gen(rng)];
    out += PoissonPoly::reduce(space, {{m, random_scalar(rng, with_params)}});
  }
  return out;
}

inline OpPoly random_op(const AlgebraPtr& alg, std::mt19937_64& rng, unsigned length = 3, unsigned terms = 3) {
  std::uniform_int_distribution<unsigned> nterms(1, terms), len(0, length);
  std::uniform_int_distribution<std::size_t> gen(0, alg->generators.size() - 1);
  WordTerms raw;
  for (unsigned t = nterms(rng); t > 0; --t) {
    Word w;
    for (unsigned k = len(rng); k > 0; --k) w.push_back(static_cast<std::uint8_t>(gen(rng)));
    raw[w] += random_scalar(rng);
  }
  return OpPoly(alg, raw);
}

inline const std::vector<std::string>& all_spaces() {
  static const std::vector<std::string> names = {"r2n", "s2", "tstar_s1", "tstar_rplus", "t2"};
  return names;
}

}  // namespace testing
