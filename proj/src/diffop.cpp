#include "obstructo/diffop.hpp"

#include "obstructo/error.hpp"

namespace obstructo {

CommPoly DiffRing::derive(std::size_t d, const CommPoly& f) const {
  CommPoly out(ring);
  for (std::size_t k = 0; k < ring->size(); ++k) {
    if (images[d][k].is_zero()) continue;
    CommPoly pk = f.partial(k);
    if (!pk.is_zero()) out += pk * images[d][k];
  }
  return out;
}

CommPoly DiffRing::derive(const std::vector<std::uint16_t>& alpha, CommPoly f) const {
  for (std::size_t d = 0; d < alpha.size(); ++d)
    for (unsigned t = 0; t < alpha[d]; ++t) f = derive(d, f);
  return f;
}

namespace {

std::shared_ptr<PolyRing> plain_ring(const std::string& name, std::vector<std::string> gens) {
  auto r = std::make_shared<PolyRing>();
  r->name = name;
  r->generators = std::move(gens);
  return r;
}

void add_square_rule(PolyRing& ring, const std::string& head, const std::string& other) {
  RingPtr view(std::shared_ptr<PolyRing>(), &ring);
  ReductionRule rule;
  rule.head = ring.generator_monomial(static_cast<std::size_t>(ring.index_of(head)), 2);
  CommPoly o = CommPoly::generator(view, other);
  rule.replacement = (CommPoly(view, ParamScalar(1)) - o * o).terms();
  ring.rules.push_back(rule);
}

/// d/dv on a plain polynomial ring: images are 1 on v and 0 elsewhere.
std::vector<CommPoly> coordinate_images(const RingPtr& ring, std::size_t v) {
  std::vector<CommPoly> out(ring->size(), CommPoly(ring));
  out[v] = CommPoly(ring, ParamScalar(1));
  return out;
}

DiffRingPtr polynomial_ring(const std::string& name, const std::vector<std::string>& vars) {
  auto dr = std::make_shared<DiffRing>();
  dr->name = name;
  dr->ring = plain_ring(name, vars);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    dr->derivations.push_back("d_" + vars[v]);
    dr->images.push_back(coordinate_images(dr->ring, v));
  }
  return dr;
}

}  // namespace

DiffRingPtr phase_plane_ring() {
  static const DiffRingPtr r = polynomial_ring("poly(q,p)", {"q", "p"});
  return r;
}

DiffRingPtr line_ring() {
  static const DiffRingPtr r = polynomial_ring("poly(q)", {"q"});
  return r;
}

DiffRingPtr circle_ring() {
  static const DiffRingPtr r = [] {
    auto ring = plain_ring("trig(theta)", {"cos_theta", "sin_theta"});
    add_square_rule(*ring, "sin_theta", "cos_theta");
    auto dr = std::make_shared<DiffRing>();
    dr->name = ring->name;
    dr->ring = ring;
    dr->derivations = {"d_theta"};
    dr->images = {{-CommPoly::generator(dr->ring, "sin_theta"), CommPoly::generator(dr->ring, "cos_theta")}};
    return dr;
  }();
  return r;
}

DiffRingPtr torus_ring() {
  static const DiffRingPtr r = [] {
    auto ring = plain_ring("poly(x,y)*trig(x,y)", {"x", "y", "sx", "cx", "sy", "cy"});
    add_square_rule(*ring, "sx", "cx");
    add_square_rule(*ring, "sy", "cy");
    auto dr = std::make_shared<DiffRing>();
    dr->name = ring->name;
    dr->ring = ring;
    dr->derivations = {"d_x", "d_y"};
    const RingPtr& rr = dr->ring;
    CommPoly zero(rr), one(rr, ParamScalar(1));
    ParamScalar tp = ParamScalar(2) * ParamScalar::param(Param::pi);
    auto g = [&](const char* n) { return CommPoly::generator(rr, n); };
    dr->images.push_back({one, zero, tp * g("cx"), -tp * g("sx"), zero, zero});
    dr->images.push_back({zero, one, zero, zero, tp * g("cy"), -tp * g("sy")});
    return dr;
  }();
  return r;
}

DiffOp DiffOp::multiplication(const DiffRingPtr& ring, const CommPoly& f) {
  DiffOp out(ring);
  out.add(MultiIndex(ring->derivations.size(), 0), f);
  return out;
}

DiffOp DiffOp::derivation(const DiffRingPtr& ring, std::size_t d) {
  DiffOp out(ring);
  MultiIndex alpha(ring->derivations.size(), 0);
  alpha.at(d) = 1;
  out.add(alpha, ring->constant(ParamScalar(1)));
  return out;
}

void DiffOp::add(const MultiIndex& alpha, const CommPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

void require_same_ring(const DiffOp& x, const DiffOp& y) {
  if (x.ring() && y.ring() && x.ring()->name != y.ring()->name)
    throw RingMismatch("operators act on " + x.ring()->name + " and " + y.ring()->name);
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

}  // namespace

DiffOp& DiffOp::operator+=(const DiffOp& y) {
  require_same_ring(*this, y);
  if (!ring_) ring_ = y.ring_;
  for (const auto& [a, c] : y.terms_) add(a, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& y) {
  require_same_ring(*this, y);
  if (!ring_) ring_ = y.ring_;
  for (const auto& [a, c] : y.terms_) add(a, -c);
  return *this;
}

DiffOp operator-(const DiffOp& x) {
  DiffOp out(x.ring_);
  for (const auto& [a, c] : x.terms_) out.terms_.emplace(a, -c);
  return out;
}

DiffOp operator*(const ParamScalar& s, const DiffOp& x) {
  DiffOp out(x.ring_);
  for (const auto& [a, c] : x.terms_) out.add(a, s * c);
  return out;
}

DiffOp operator*(const DiffOp& x, const DiffOp& y) {
  require_same_ring(x, y);
  DiffOp out(x.ring_ ? x.ring_ : y.ring_);
  if (!out.ring_) return out;
  const DiffRing& dr = *out.ring_;
  const std::size_t nd = dr.derivations.size();
  // (a d^alpha)(b d^beta) = sum_gamma C(alpha, gamma) a (d^gamma b) d^(alpha - gamma + beta)
  for (const auto& [alpha, a] : x.terms_) {
    for (const auto& [beta, b] : y.terms_) {
      MultiIndex gamma(nd, 0);
      while (true) {
        Rational coeff(1);
        MultiIndex rest(nd);
        for (std::size_t d = 0; d < nd; ++d) {
          coeff *= binomial(alpha[d], gamma[d]);
          rest[d] = static_cast<std::uint16_t>(alpha[d] - gamma[d] + beta[d]);
        }
        CommPoly db = dr.derive(gamma, b);
        if (!db.is_zero()) out.add(rest, ParamScalar(coeff) * (a * db));
        std::size_t d = 0;
        while (d < nd && gamma[d] == alpha[d]) gamma[d++] = 0;
        if (d == nd) break;
        ++gamma[d];
      }
    }
  }
  return out;
}

CommPoly DiffOp::apply(const CommPoly& f) const {
  if (!ring_) return CommPoly(f.ring());
  if (f.ring() && f.ring()->name != ring_->ring->name)
    throw RingMismatch("operator on " + ring_->name + " applied to an element of " + f.ring()->name);
  CommPoly out(ring_->ring);
  for (const auto& [alpha, a] : terms_) out += a * ring_->derive(alpha, f);
  return out;
}

DiffOp DiffOp::divided_by(Param p, unsigned power) const {
  DiffOp out(ring_);
  for (const auto& [a, c] : terms_) out.terms_.emplace(a, c.divided_by(p, power));
  return out;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [alpha, c] : terms_) {
    std::string d;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (alpha[k] == 0) continue;
      if (!d.empty()) d += "*";
      d += fmt_detail::power_factor(ring_->derivations[k], alpha[k]);
    }
    std::string term = "(" + c.to_string() + ")";
    if (!d.empty()) term += "*" + d;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

DiffOp commutator(const DiffOp& x, const DiffOp& y) { return x * y - y * x; }

DiffOp quantum_bracket(const DiffOp& x, const DiffOp& y) {
  return (ParamScalar::i() * commutator(x, y)).divided_by(Param::hbar);
}

}  // namespace obstructo
