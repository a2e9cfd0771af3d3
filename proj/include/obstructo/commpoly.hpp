#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "obstructo/scalar.hpp"

namespace obstructo {

/// Exponent vector over the generators of a PolyRing.
using Monomial = std::vector<std::uint16_t>;
using MonomialTerms = std::map<Monomial, ParamScalar>;

unsigned total_degree(const Monomial& m);

/// head -> replacement. Applied to any monomial divisible by `head`.
struct ReductionRule {
  Monomial head;
  MonomialTerms replacement;
};

/// A commutative polynomial ring over ParamScalar, presented by named
/// generators and (optionally) rewrite rules for a quotient. The rule head
/// generator is the largest variable in the lexicographic order used to
/// argue termination; rules must lower its exponent.
struct PolyRing {
  std::string name;
  std::vector<std::string> generators;
  std::vector<ReductionRule> rules;

  std::size_t size() const { return generators.size(); }
  /// -1 when absent.
  int index_of(const std::string& gen) const;
  Monomial unit() const { return Monomial(generators.size(), 0); }
  Monomial generator_monomial(std::size_t k, unsigned power = 1) const;
  bool is_reduced(const Monomial& m) const;
};

using RingPtr = std::shared_ptr<const PolyRing>;

/// Element of a PolyRing. Stored terms are always reduced and nonzero.
class CommPoly {
 public:
  CommPoly() = default;
  explicit CommPoly(RingPtr ring) : ring_(std::move(ring)) {}
  CommPoly(RingPtr ring, const ParamScalar& constant);
  /// Builds from raw (possibly reducible) terms and reduces.
  CommPoly(RingPtr ring, const MonomialTerms& raw);

  static CommPoly generator(RingPtr ring, const std::string& name);
  static CommPoly generator(RingPtr ring, std::size_t k);
  static CommPoly monomial(RingPtr ring, const Monomial& m, const ParamScalar& coeff = ParamScalar(1));

  const RingPtr& ring() const { return ring_; }
  const MonomialTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  ParamScalar constant_term() const;
  /// Maximal total degree; -1 for zero.
  int degree() const;
  bool has_params() const;

  CommPoly& operator+=(const CommPoly& y);
  CommPoly& operator-=(const CommPoly& y);
  friend CommPoly operator+(CommPoly x, const CommPoly& y) { return x += y; }
  friend CommPoly operator-(CommPoly x, const CommPoly& y) { return x -= y; }
  friend CommPoly operator-(const CommPoly& x);
  friend CommPoly operator*(const CommPoly& x, const CommPoly& y);
  friend CommPoly operator*(const ParamScalar& s, const CommPoly& x);
  friend bool operator==(const CommPoly& x, const CommPoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const CommPoly& x, const CommPoly& y) { return !(x == y); }

  CommPoly pow(unsigned n) const;
  /// Formal partial derivative with respect to generator k (then reduced).
  CommPoly partial(std::size_t k) const;
  CommPoly substitute(const ExactBindings& values) const;
  /// Scalar divide by a parameter power; exact or InexactDivision.
  CommPoly divided_by(Param p, unsigned power = 1) const;

  /// Numeric value with generator values given in ring order.
  std::complex<double> evaluate(const std::vector<std::complex<double>>& gens, const Bindings& b) const;

  std::string to_string() const;

  /// Reduces raw terms to the normal form of the ring.
  static MonomialTerms reduce(const PolyRing& ring, MonomialTerms raw);

 private:
  void add_raw(const Monomial& m, const ParamScalar& c);
  RingPtr ring_;
  MonomialTerms terms_;
};

/// Print order: ascending total degree, then descending exponent vector.
std::vector<const MonomialTerms::value_type*> print_order(const MonomialTerms& terms);
std::vector<std::string> monomial_factors(const PolyRing& ring, const Monomial& m);

/// All reduced monomials of total degree <= cap, in print order.
std::vector<Monomial> reduced_monomials(const PolyRing& ring, unsigned cap);

}  // namespace obstructo
