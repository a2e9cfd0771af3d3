#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obstructo/commpoly.hpp"

namespace obstructo {

enum class SpaceKind { r2n, s2, tstar_s1, tstar_rplus, t2 };

/// One of the built-in phase spaces: a polynomial ring in the basic
/// observables, the Poisson brackets of the generators, and the Casimir
/// relations presented as rewrite rules.
struct PhaseSpace {
  std::string name;
  SpaceKind kind{};
  int n = 0;  // configuration dimension for r2n
  RingPtr ring;
  /// {g_i, g_j}; stored for i < j only, the other orientation is implied.
  std::map<std::pair<std::size_t, std::size_t>, CommPoly> bracket_table;
  /// Generators spanning the distinguished basic algebra (constants excluded).
  std::vector<std::string> basic_generators;
  /// Parameter values used when a computation needs numeric coefficients.
  ExactBindings instance;
  std::vector<std::string> notes;

  const std::vector<std::string>& generators() const { return ring->generators; }
  CommPoly generator_bracket(std::size_t i, std::size_t j) const;
};

using SpacePtr = std::shared_ptr<const PhaseSpace>;

/// "r2n" (with n >= 1), "s2", "tstar_s1", "tstar_rplus", "t2".
SpacePtr make_space(const std::string& name, int n = 1);

class PoissonPoly;

/// Basis of the distinguished basic algebra: the basic generators, plus the
/// constant 1 on r2n and tstar_rplus where the algebra contains it.
std::vector<PoissonPoly> basic_algebra_basis(const SpacePtr& space);

/// Reduced polynomial observable on a PhaseSpace.
class PoissonPoly {
 public:
  PoissonPoly() = default;
  explicit PoissonPoly(SpacePtr space) : space_(std::move(space)), poly_(space_->ring) {}
  PoissonPoly(SpacePtr space, const ParamScalar& constant)
      : space_(std::move(space)), poly_(space_->ring, constant) {}
  PoissonPoly(SpacePtr space, CommPoly poly);

  static PoissonPoly generator(const SpacePtr& space, const std::string& name);
  static PoissonPoly monomial(const SpacePtr& space, const Monomial& m, const ParamScalar& c = ParamScalar(1));
  /// Reduces arbitrary raw terms to the space's normal form.
  static PoissonPoly reduce(const SpacePtr& space, const MonomialTerms& raw);

  const SpacePtr& space() const { return space_; }
  const CommPoly& poly() const { return poly_; }
  const MonomialTerms& terms() const { return poly_.terms(); }
  bool is_zero() const { return poly_.is_zero(); }
  int degree() const { return poly_.degree(); }

  PoissonPoly& operator+=(const PoissonPoly& y);
  PoissonPoly& operator-=(const PoissonPoly& y);
  friend PoissonPoly operator+(PoissonPoly x, const PoissonPoly& y) { return x += y; }
  friend PoissonPoly operator-(PoissonPoly x, const PoissonPoly& y) { return x -= y; }
  friend PoissonPoly operator-(const PoissonPoly& x) { return {x.space_, -x.poly_}; }
  friend PoissonPoly operator*(const PoissonPoly& x, const PoissonPoly& y);
  friend PoissonPoly operator*(const ParamScalar& s, const PoissonPoly& x) { return {x.space_, s * x.poly_}; }
  friend bool operator==(const PoissonPoly& x, const PoissonPoly& y) { return x.poly_ == y.poly_; }
  friend bool operator!=(const PoissonPoly& x, const PoissonPoly& y) { return !(x == y); }
  PoissonPoly pow(unsigned k) const { return {space_, poly_.pow(k)}; }

  std::string to_string() const { return poly_.to_string(); }

 private:
  SpacePtr space_;
  CommPoly poly_;
};

/// Poisson bracket, extended from the generator table by the Leibniz rule.
PoissonPoly bracket(const PoissonPoly& f, const PoissonPoly& g);

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
PoissonPoly jacobi_residual(const PoissonPoly& f, const PoissonPoly& g, const PoissonPoly& h);

/// Basis of { f : deg f <= cap, {f, b} in span(basis) for all b in basis }.
std::vector<PoissonPoly> normalizer(const SpacePtr& space, const std::vector<PoissonPoly>& basis, unsigned cap);

using MonomialPredicate = std::function<bool(const Monomial&)>;

struct SubalgebraResult {
  bool closed = true;
  /// Offending pair and its bracket when not closed.
  std::optional<std::pair<PoissonPoly, PoissonPoly>> witness;
  std::optional<PoissonPoly> witness_bracket;
};

/// Closure of the span of reduced monomials (degree <= cap) that satisfy
/// `member`; membership of a bracket is tested monomial by monomial.
SubalgebraResult is_lie_subalgebra(const SpacePtr& space, const MonomialPredicate& member, unsigned cap);
/// Closure of span(basis); brackets are tested by exact span membership.
SubalgebraResult is_lie_subalgebra(const SpacePtr& space, const std::vector<PoissonPoly>& basis);

/// -sum_i {b_i, {b_i, f}}.
PoissonPoly symplectic_laplacian(const std::vector<PoissonPoly>& basic_basis, const PoissonPoly& f);

struct Markers {
  bool d1 = false;  ///< constant 1 found among brackets of monomials up to cap
  bool d2 = false;  ///< polynomial algebra carries relations (not free)
  unsigned cap = 0;
};
Markers obstruction_markers(const SpacePtr& space, unsigned cap);

/// Coordinates of polynomials against a shared monomial index, with the
/// space's numeric instance substituted for the parameters.
class MonomialIndex {
 public:
  std::size_t index(const Monomial& m);
  std::size_t size() const { return order_.size(); }
  const Monomial& monomial(std::size_t k) const { return order_[k]; }
  std::map<std::size_t, GaussRat> coordinates(const CommPoly& p, const ExactBindings& instance);

 private:
  std::map<Monomial, std::size_t> ids_;
  std::vector<Monomial> order_;
};

}  // namespace obstructo
