#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "obstructo/scalar.hpp"

namespace obstructo {

/// A word in the operator generators, by generator index.
using Word = std::vector<std::uint8_t>;
using WordTerms = std::map<Word, ParamScalar>;

/// Presentation of an associative algebra by generators, adjacent-swap
/// rules g_j g_i -> (...) for j > i, and optional power rules g^k -> (...).
/// A word is in normal form when its letters are nondecreasing and it
/// contains no power-rule head.
struct OpAlgebra {
  struct PowerRule {
    std::uint8_t gen = 0;
    unsigned power = 0;
    WordTerms replacement;
  };

  std::string name;
  std::vector<std::string> generators;
  std::map<std::pair<std::uint8_t, std::uint8_t>, WordTerms> swap_rules;  // key (j, i), j > i
  std::vector<PowerRule> power_rules;

  int index_of(const std::string& gen) const;
  bool is_normal(const Word& w) const;
};

using AlgebraPtr = std::shared_ptr<const OpAlgebra>;

/// Canonical commutation relations: P Q -> Q P - i hbar.
AlgebraPtr weyl_algebra();
/// Universal enveloping algebra of su(2): [S_j, S_k] = i hbar eps_jkl S_l.
AlgebraPtr su2_algebra();
/// e(2) operators L < C < S with [L,S] = -i hbar C, [L,C] = i hbar S,
/// [C,S] = 0 and the central relation S^2 -> 1 - C^2.
AlgebraPtr e2_algebra();
/// "weyl", "su2", "e2".
AlgebraPtr make_algebra(const std::string& name);

/// Rewrites raw terms to normal form. With an engine, the rule applied at
/// each step is chosen at random among all applicable positions.
WordTerms normal_form(const OpAlgebra& alg, WordTerms raw, std::mt19937_64* rng = nullptr);

class OpPoly {
 public:
  OpPoly() = default;
  explicit OpPoly(AlgebraPtr alg) : alg_(std::move(alg)) {}
  OpPoly(AlgebraPtr alg, const ParamScalar& multiple_of_identity);
  /// Normalizes raw terms.
  OpPoly(AlgebraPtr alg, const WordTerms& raw);

  static OpPoly identity(AlgebraPtr alg) { return OpPoly(std::move(alg), ParamScalar(1)); }
  static OpPoly generator(AlgebraPtr alg, const std::string& name);
  static OpPoly word(AlgebraPtr alg, const Word& w, const ParamScalar& c = ParamScalar(1));

  const AlgebraPtr& algebra() const { return alg_; }
  const WordTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Scalar multiple of the identity (including zero).
  bool is_scalar() const;
  ParamScalar identity_coefficient() const;
  ParamScalar coefficient(const Word& w) const;

  OpPoly& operator+=(const OpPoly& y);
  OpPoly& operator-=(const OpPoly& y);
  friend OpPoly operator+(OpPoly x, const OpPoly& y) { return x += y; }
  friend OpPoly operator-(OpPoly x, const OpPoly& y) { return x -= y; }
  friend OpPoly operator-(const OpPoly& x);
  friend OpPoly operator*(const OpPoly& x, const OpPoly& y);
  friend OpPoly operator*(const ParamScalar& s, const OpPoly& x);
  friend bool operator==(const OpPoly& x, const OpPoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const OpPoly& x, const OpPoly& y) { return !(x == y); }

  OpPoly pow(unsigned n) const;
  OpPoly divided_by(Param p, unsigned power = 1) const;
  OpPoly substitute(const ExactBindings& values) const;

  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  WordTerms terms_;
};

/// normal_form(x y - y x).
OpPoly commutator(const OpPoly& x, const OpPoly& y);
/// (i / hbar) [x, y], the quantum image of a Poisson bracket.
OpPoly quantum_bracket(const OpPoly& x, const OpPoly& y);
/// (x y + y x) / 2.
OpPoly symmetrized(const OpPoly& x, const OpPoly& y);

struct ConfluenceResult {
  bool pass = true;
  std::size_t trials = 0;
  std::optional<Word> counterexample;
};

/// Random words of length <= max_length reduced along two independently
/// randomized rule orders must agree.
ConfluenceResult confluence_probe(const OpAlgebra& alg, std::size_t trials, std::uint64_t seed = 0x5eed,
                                  std::size_t max_length = 6);

/// su(2) element written as sum_k Cas^k * w_k with each w_k free of S3^2,
/// where Cas = S1^2 + S2^2 + S3^2 is central.
struct CasimirExpansion {
  std::map<unsigned, OpPoly> by_power;

  /// Replaces Cas by `value`.
  OpPoly substitute(const ParamScalar& value) const;
  std::string to_string() const;
};

CasimirExpansion casimir_expand(const OpPoly& x);

std::string format_word(const OpAlgebra& alg, const Word& w);

}  // namespace obstructo
