#include "obstructo/commpoly.hpp"

#include <algorithm>

#include "obstructo/error.hpp"

namespace obstructo {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

int PolyRing::index_of(const std::string& gen) const {
  auto it = std::find(generators.begin(), generators.end(), gen);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

Monomial PolyRing::generator_monomial(std::size_t k, unsigned power) const {
  Monomial m = unit();
  m[k] = static_cast<std::uint16_t>(power);
  return m;
}

namespace {

bool divides(const Monomial& head, const Monomial& m) {
  for (std::size_t k = 0; k < m.size(); ++k)
    if (head[k] > m[k]) return false;
  return true;
}

void accumulate(MonomialTerms& terms, const Monomial& m, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

bool PolyRing::is_reduced(const Monomial& m) const {
  for (const auto& r : rules)
    if (divides(r.head, m)) return false;
  return true;
}

MonomialTerms CommPoly::reduce(const PolyRing& ring, MonomialTerms raw) {
  if (ring.rules.empty()) return raw;
  MonomialTerms done;
  while (!raw.empty()) {
    auto node = raw.extract(std::prev(raw.end()));
    const Monomial& m = node.key();
    const ReductionRule* rule = nullptr;
    for (const auto& r : ring.rules) {
      if (divides(r.head, m)) {
        rule = &r;
        break;
      }
    }
    if (!rule) {
      accumulate(done, m, node.mapped());
      continue;
    }
    Monomial rest = m;
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] = static_cast<std::uint16_t>(rest[k] - rule->head[k]);
    for (const auto& [rm, rc] : rule->replacement) {
      Monomial next = rest;
      for (std::size_t k = 0; k < next.size(); ++k) next[k] = static_cast<std::uint16_t>(next[k] + rm[k]);
      accumulate(raw, next, rc * node.mapped());
    }
  }
  return done;
}

CommPoly::CommPoly(RingPtr ring, const ParamScalar& constant) : ring_(std::move(ring)) {
  if (!constant.is_zero()) terms_.emplace(ring_->unit(), constant);
}

CommPoly::CommPoly(RingPtr ring, const MonomialTerms& raw) : ring_(std::move(ring)) {
  MonomialTerms clean;
  for (const auto& [m, c] : raw) accumulate(clean, m, c);
  terms_ = reduce(*ring_, std::move(clean));
}

CommPoly CommPoly::generator(RingPtr ring, const std::string& name) {
  int k = ring->index_of(name);
  if (k < 0) throw UnknownSymbol("'" + name + "' is not a generator of " + ring->name);
  return generator(std::move(ring), static_cast<std::size_t>(k));
}

CommPoly CommPoly::generator(RingPtr ring, std::size_t k) {
  Monomial m = ring->generator_monomial(k);
  return monomial(std::move(ring), m);
}

CommPoly CommPoly::monomial(RingPtr ring, const Monomial& m, const ParamScalar& coeff) {
  MonomialTerms raw;
  if (!coeff.is_zero()) raw.emplace(m, coeff);
  return CommPoly(std::move(ring), raw);
}

bool CommPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

ParamScalar CommPoly::constant_term() const {
  if (!ring_) return {};
  auto it = terms_.find(ring_->unit());
  return it == terms_.end() ? ParamScalar() : it->second;
}

int CommPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(total_degree(m)));
  return d;
}

bool CommPoly::has_params() const {
  for (const auto& [m, c] : terms_)
    if (c.has_params()) return true;
  return false;
}

void CommPoly::add_raw(const Monomial& m, const ParamScalar& c) { accumulate(terms_, m, c); }

CommPoly& CommPoly::operator+=(const CommPoly& y) {
  if (!ring_) ring_ = y.ring_;
  for (const auto& [m, c] : y.terms_) add_raw(m, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& y) {
  if (!ring_) ring_ = y.ring_;
  for (const auto& [m, c] : y.terms_) add_raw(m, -c);
  return *this;
}

CommPoly operator-(const CommPoly& x) {
  CommPoly out(x.ring_);
  for (const auto& [m, c] : x.terms_) out.terms_.emplace(m, -c);
  return out;
}

CommPoly operator*(const CommPoly& x, const CommPoly& y) {
  RingPtr ring = x.ring_ ? x.ring_ : y.ring_;
  if (x.ring_ && y.ring_ && x.ring_ != y.ring_ && x.ring_->name != y.ring_->name)
    throw RingMismatch("cannot multiply elements of " + x.ring_->name + " and " + y.ring_->name);
  MonomialTerms raw;
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) {
      Monomial m = mx;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = static_cast<std::uint16_t>(m[k] + my[k]);
      accumulate(raw, m, cx * cy);
    }
  }
  CommPoly out(ring);
  out.terms_ = CommPoly::reduce(*ring, std::move(raw));
  return out;
}

CommPoly operator*(const ParamScalar& s, const CommPoly& x) {
  CommPoly out(x.ring_);
  if (s.is_zero()) return out;
  for (const auto& [m, c] : x.terms_) out.add_raw(m, s * c);
  return out;
}

CommPoly CommPoly::pow(unsigned n) const {
  CommPoly out(ring_, ParamScalar(1));
  for (unsigned k = 0; k < n; ++k) out = out * *this;
  return out;
}

CommPoly CommPoly::partial(std::size_t k) const {
  MonomialTerms raw;
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Monomial d = m;
    d[k] = static_cast<std::uint16_t>(d[k] - 1);
    accumulate(raw, d, c * ParamScalar(static_cast<long>(m[k])));
  }
  CommPoly out(ring_);
  out.terms_ = reduce(*ring_, std::move(raw));
  return out;
}

CommPoly CommPoly::substitute(const ExactBindings& values) const {
  CommPoly out(ring_);
  for (const auto& [m, c] : terms_) out.add_raw(m, c.substitute(values));
  return out;
}

CommPoly CommPoly::divided_by(Param p, unsigned power) const {
  CommPoly out(ring_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.divided_by(p, power));
  return out;
}

std::complex<double> CommPoly::evaluate(const std::vector<std::complex<double>>& gens, const Bindings& b) const {
  std::complex<double> total = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> term = c.evaluate(b);
    for (std::size_t k = 0; k < m.size(); ++k)
      for (unsigned n = 0; n < m[k]; ++n) term *= gens[k];
    total += term;
  }
  return total;
}

std::vector<const MonomialTerms::value_type*> print_order(const MonomialTerms& terms) {
  std::vector<const MonomialTerms::value_type*> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(&t);
  std::sort(out.begin(), out.end(), [](auto* x, auto* y) {
    unsigned dx = total_degree(x->first), dy = total_degree(y->first);
    if (dx != dy) return dx < dy;
    return x->first > y->first;
  });
  return out;
}

std::vector<std::string> monomial_factors(const PolyRing& ring, const Monomial& m) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k]) out.push_back(fmt_detail::power_factor(ring.generators[k], m[k]));
  return out;
}

std::string CommPoly::to_string() const {
  if (!ring_) return "0";
  std::vector<fmt_detail::Summand> summands;
  for (const auto* t : print_order(terms_))
    fmt_detail::expand_summands(t->second, monomial_factors(*ring_, t->first), summands);
  return fmt_detail::join_summands(summands);
}

std::vector<Monomial> reduced_monomials(const PolyRing& ring, unsigned cap) {
  std::vector<Monomial> out;
  Monomial m = ring.unit();
  const std::size_t n = ring.size();
  // Odometer over exponent vectors with total degree <= cap.
  while (true) {
    if (ring.is_reduced(m)) out.push_back(m);
    std::size_t k = 0;
    while (k < n) {
      m[k]++;
      if (total_degree(m) <= cap) break;
      m[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end(), [](const Monomial& x, const Monomial& y) {
    unsigned dx = total_degree(x), dy = total_degree(y);
    if (dx != dy) return dx < dy;
    return x > y;
  });
  return out;
}

}  // namespace obstructo
