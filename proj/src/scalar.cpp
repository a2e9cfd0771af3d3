#include "obstructo/scalar.hpp"

#include <cmath>
#include <sstream>

#include "obstructo/error.hpp"

namespace obstructo {

namespace {

constexpr std::array<std::string_view, kParamCount> kParamNames = {
    "hbar", "s", "a", "c", "b", "e", "nu", "eta", "pi"};

std::string rational_text(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "(" + r.get_num().get_str() + "/" + r.get_den().get_str() + ")";
}

}  // namespace

GaussRat operator/(const GaussRat& x, const GaussRat& y) {
  Rational norm = y.re * y.re + y.im * y.im;
  if (sgn(norm) == 0) throw InexactDivision("division by zero");
  GaussRat num = x * y.conj();
  return {num.re / norm, num.im / norm};
}

std::string GaussRat::to_string() const {
  if (is_real()) return re.get_str();
  std::ostringstream os;
  os << re.get_str() << (sgn(im) < 0 ? "-" : "+") << Rational(abs(im)).get_str() << "i";
  return os.str();
}

std::string_view param_name(Param p) { return kParamNames[static_cast<std::size_t>(p)]; }

std::optional<Param> try_param_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kParamCount; ++k)
    if (kParamNames[k] == name) return static_cast<Param>(k);
  return std::nullopt;
}

Param param_from_name(std::string_view name) {
  if (auto p = try_param_from_name(name)) return *p;
  throw UnknownParameter("unknown parameter '" + std::string(name) + "'");
}

ParamScalar::ParamScalar(const GaussRat& c) {
  if (!c.is_zero()) terms_.emplace(ParamExponents{}, c);
}

ParamScalar ParamScalar::param(Param p, unsigned power) {
  ParamExponents e{};
  e[static_cast<std::size_t>(p)] = static_cast<std::uint16_t>(power);
  return monomial(GaussRat(1), e);
}

ParamScalar ParamScalar::monomial(const GaussRat& c, const ParamExponents& exps) {
  ParamScalar out;
  out.add_term(exps, c);
  return out;
}

bool ParamScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ParamExponents{});
}

bool ParamScalar::mentions(Param p) const {
  for (const auto& [e, c] : terms_)
    if (e[static_cast<std::size_t>(p)] != 0) return true;
  return false;
}

GaussRat ParamScalar::constant_term() const {
  auto it = terms_.find(ParamExponents{});
  return it == terms_.end() ? GaussRat() : it->second;
}

void ParamScalar::add_term(const ParamExponents& e, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& y) {
  for (const auto& [e, c] : y.terms_) add_term(e, c);
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& y) {
  for (const auto& [e, c] : y.terms_) add_term(e, -c);
  return *this;
}

ParamScalar operator+(const ParamScalar& x, const ParamScalar& y) {
  ParamScalar out = x;
  out += y;
  return out;
}

ParamScalar operator-(const ParamScalar& x, const ParamScalar& y) {
  ParamScalar out = x;
  out -= y;
  return out;
}

ParamScalar operator-(const ParamScalar& x) {
  ParamScalar out;
  for (const auto& [e, c] : x.terms_) out.terms_.emplace(e, -c);
  return out;
}

ParamScalar operator*(const ParamScalar& x, const ParamScalar& y) {
  ParamScalar out;
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) {
      ParamExponents e;
      for (std::size_t k = 0; k < kParamCount; ++k) e[k] = static_cast<std::uint16_t>(ex[k] + ey[k]);
      out.add_term(e, cx * cy);
    }
  }
  return out;
}

ParamScalar ParamScalar::divided_by(const GaussRat& d) const {
  if (d.is_zero()) throw InexactDivision("division by zero literal");
  ParamScalar out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c / d);
  return out;
}

bool ParamScalar::divisible_by(Param p, unsigned power) const {
  const auto k = static_cast<std::size_t>(p);
  for (const auto& [e, c] : terms_)
    if (e[k] < power) return false;
  return true;
}

ParamScalar ParamScalar::divided_by(Param p, unsigned power) const {
  if (!divisible_by(p, power))
    throw InexactDivision(to_string() + " is not divisible by " + fmt_detail::power_factor(param_name(p), power));
  const auto k = static_cast<std::size_t>(p);
  ParamScalar out;
  for (const auto& [key, c] : terms_) {
    auto e = key;
    e[k] = static_cast<std::uint16_t>(e[k] - power);
    out.terms_.emplace(e, c);
  }
  return out;
}

ParamScalar ParamScalar::substitute(const ExactBindings& values) const {
  ParamScalar out;
  for (const auto& [e, c] : terms_) {
    ParamExponents kept = e;
    GaussRat factor = c;
    for (const auto& [p, v] : values) {
      const auto k = static_cast<std::size_t>(p);
      for (unsigned n = 0; n < e[k]; ++n) factor *= v;
      kept[k] = 0;
    }
    out.add_term(kept, factor);
  }
  return out;
}

ParamScalar ParamScalar::substitute(Param p, const ParamScalar& value) const {
  const auto k = static_cast<std::size_t>(p);
  ParamScalar out;
  for (const auto& [e, c] : terms_) {
    ParamExponents kept = e;
    kept[k] = 0;
    ParamScalar term = monomial(c, kept);
    for (unsigned n = 0; n < e[k]; ++n) term *= value;
    out += term;
  }
  return out;
}

std::complex<double> ParamScalar::evaluate(const Bindings& bindings) const {
  std::complex<double> total = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> term = c.to_complex();
    for (std::size_t k = 0; k < kParamCount; ++k) {
      if (e[k] == 0) continue;
      auto it = bindings.find(static_cast<Param>(k));
      if (it == bindings.end())
        throw UnboundParameter("parameter '" + std::string(kParamNames[k]) + "' has no binding");
      for (unsigned n = 0; n < e[k]; ++n) term *= it->second;
    }
    total += term;
  }
  return total;
}

GaussRat ParamScalar::evaluate_exact(const ExactBindings& bindings) const {
  GaussRat total;
  for (const auto& [e, c] : terms_) {
    GaussRat term = c;
    for (std::size_t k = 0; k < kParamCount; ++k) {
      if (e[k] == 0) continue;
      auto it = bindings.find(static_cast<Param>(k));
      if (it == bindings.end())
        throw UnboundParameter("parameter '" + std::string(kParamNames[k]) + "' has no binding");
      for (unsigned n = 0; n < e[k]; ++n) term *= it->second;
    }
    total += term;
  }
  return total;
}

std::string ParamScalar::to_string() const {
  std::vector<fmt_detail::Summand> summands;
  fmt_detail::expand_summands(*this, {}, summands);
  return fmt_detail::join_summands(summands);
}

namespace fmt_detail {

std::string power_factor(std::string_view name, unsigned power) {
  std::string out(name);
  if (power != 1) out += "^" + std::to_string(power);
  return out;
}

void append_param_factors(const ParamExponents& e, std::vector<std::string>& out) {
  for (std::size_t k = 0; k < kParamCount; ++k)
    if (e[k] != 0) out.push_back(power_factor(kParamNames[k], e[k]));
}

void expand_summands(const ParamScalar& s, const std::vector<std::string>& tail,
                     std::vector<Summand>& out) {
  for (const auto& [e, c] : s.terms()) {
    std::vector<std::string> factors;
    append_param_factors(e, factors);
    factors.insert(factors.end(), tail.begin(), tail.end());
    if (sgn(c.re) != 0) out.push_back({c.re, false, factors});
    if (sgn(c.im) != 0) out.push_back({c.im, true, factors});
  }
}

std::string join_summands(const std::vector<Summand>& summands) {
  if (summands.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& sm : summands) {
    const bool negative = sgn(sm.coeff) < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Rational mag = abs(sm.coeff);
    std::vector<std::string> parts;
    const bool bare = sm.factors.empty() && !sm.imaginary;
    if (mag != 1 || bare) parts.push_back(rational_text(mag));
    if (sm.imaginary) parts.push_back("i");
    parts.insert(parts.end(), sm.factors.begin(), sm.factors.end());
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k) out += "*";
      out += parts[k];
    }
  }
  return out;
}

}  // namespace fmt_detail

}  // namespace obstructo
