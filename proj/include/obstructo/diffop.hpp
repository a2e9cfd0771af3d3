#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "obstructo/commpoly.hpp"

namespace obstructo {

/// Coefficient ring with commuting derivations. Each derivation is given by
/// its value on every generator and extended by the chain rule.
struct DiffRing {
  std::string name;
  RingPtr ring;
  std::vector<std::string> derivations;
  /// images[d][k] = D_d(generator k)
  std::vector<std::vector<CommPoly>> images;

  CommPoly derive(std::size_t d, const CommPoly& f) const;
  CommPoly derive(const std::vector<std::uint16_t>& alpha, CommPoly f) const;
  CommPoly gen(const std::string& name) const { return CommPoly::generator(ring, name); }
  CommPoly constant(const ParamScalar& c) const { return CommPoly(ring, c); }
};

using DiffRingPtr = std::shared_ptr<const DiffRing>;

/// Polynomials in q, p with d/dq, d/dp.
DiffRingPtr phase_plane_ring();
/// Polynomials in q with d/dq.
DiffRingPtr line_ring();
/// Trigonometric polynomials in cos_theta, sin_theta with d/dtheta.
DiffRingPtr circle_ring();
/// Polynomials in x, y tensored with trigonometric polynomials
/// sx = sin 2 pi x, cx, sy, cy; derivations d/dx, d/dy.
DiffRingPtr torus_ring();

using MultiIndex = std::vector<std::uint16_t>;

/// Differential operator sum_alpha a_alpha d^alpha, coefficients on the left.
class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(DiffRingPtr ring) : ring_(std::move(ring)) {}

  static DiffOp multiplication(const DiffRingPtr& ring, const CommPoly& f);
  static DiffOp derivation(const DiffRingPtr& ring, std::size_t d);
  static DiffOp identity(const DiffRingPtr& ring) { return multiplication(ring, ring->constant(ParamScalar(1))); }

  const DiffRingPtr& ring() const { return ring_; }
  const std::map<MultiIndex, CommPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  DiffOp& operator+=(const DiffOp& y);
  DiffOp& operator-=(const DiffOp& y);
  friend DiffOp operator+(DiffOp x, const DiffOp& y) { return x += y; }
  friend DiffOp operator-(DiffOp x, const DiffOp& y) { return x -= y; }
  friend DiffOp operator-(const DiffOp& x);
  /// Composition, normalized by d f = f d + f'.
  friend DiffOp operator*(const DiffOp& x, const DiffOp& y);
  friend DiffOp operator*(const ParamScalar& s, const DiffOp& x);
  friend bool operator==(const DiffOp& x, const DiffOp& y) { return x.terms_ == y.terms_; }

  CommPoly apply(const CommPoly& f) const;
  DiffOp divided_by(Param p, unsigned power = 1) const;
  std::string to_string() const;

 private:
  void add(const MultiIndex& alpha, const CommPoly& c);
  DiffRingPtr ring_;
  std::map<MultiIndex, CommPoly> terms_;
};

DiffOp commutator(const DiffOp& x, const DiffOp& y);
/// (i / hbar) [x, y]
DiffOp quantum_bracket(const DiffOp& x, const DiffOp& y);

}  // namespace obstructo
