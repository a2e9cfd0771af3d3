#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace obstructo {

using Rational = mpq_class;

/// Exact complex rational a + b i.
struct GaussRat {
  Rational re{0};
  Rational im{0};

  GaussRat() = default;
  GaussRat(long v) : re(v) {}  // NOLINT: implicit from integer literals is intended
  GaussRat(Rational r) : re(std::move(r)) {}
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return {Rational(0), Rational(1)}; }
  static GaussRat frac(long num, long den) { return GaussRat(Rational(num, den)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussRat conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend GaussRat operator+(const GaussRat& x, const GaussRat& y) { return {x.re + y.re, x.im + y.im}; }
  friend GaussRat operator-(const GaussRat& x, const GaussRat& y) { return {x.re - y.re, x.im - y.im}; }
  friend GaussRat operator-(const GaussRat& x) { return {-x.re, -x.im}; }
  friend GaussRat operator*(const GaussRat& x, const GaussRat& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend GaussRat operator/(const GaussRat& x, const GaussRat& y);
  GaussRat& operator+=(const GaussRat& y) { re += y.re; im += y.im; return *this; }
  GaussRat& operator-=(const GaussRat& y) { re -= y.re; im -= y.im; return *this; }
  GaussRat& operator*=(const GaussRat& y) { return *this = *this * y; }
  friend bool operator==(const GaussRat& x, const GaussRat& y) { return x.re == y.re && x.im == y.im; }
  friend bool operator!=(const GaussRat& x, const GaussRat& y) { return !(x == y); }

  std::string to_string() const;
};

/// The closed set of formal parameters. `pi` stands for the transcendental
/// constant produced when differentiating trigonometric torus observables.
enum class Param : std::uint8_t { hbar, s, a, c, b, e, nu, eta, pi };
inline constexpr std::size_t kParamCount = 9;

std::string_view param_name(Param p);
/// Throws UnknownParameter for anything outside the closed set.
Param param_from_name(std::string_view name);
std::optional<Param> try_param_from_name(std::string_view name);

using ParamExponents = std::array<std::uint16_t, kParamCount>;

using Bindings = std::map<Param, std::complex<double>>;
using ExactBindings = std::map<Param, GaussRat>;

/// Gaussian-rational combination of monomials in the formal parameters.
/// Always canonical: no zero coefficients, one entry per exponent vector.
class ParamScalar {
 public:
  using Terms = std::map<ParamExponents, GaussRat>;

  ParamScalar() = default;
  ParamScalar(long v) : ParamScalar(GaussRat(v)) {}  // NOLINT
  ParamScalar(const GaussRat& c);                     // NOLINT
  ParamScalar(const Rational& r) : ParamScalar(GaussRat(r)) {}  // NOLINT

  static ParamScalar param(Param p, unsigned power = 1);
  static ParamScalar hbar(unsigned power = 1) { return param(Param::hbar, power); }
  static ParamScalar i() { return ParamScalar(GaussRat::i()); }
  static ParamScalar frac(long num, long den) { return ParamScalar(GaussRat::frac(num, den)); }
  static ParamScalar monomial(const GaussRat& c, const ParamExponents& exps);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool has_params() const { return !is_constant(); }
  bool mentions(Param p) const;
  /// Coefficient of the parameter-free term.
  GaussRat constant_term() const;

  friend ParamScalar operator+(const ParamScalar& x, const ParamScalar& y);
  friend ParamScalar operator-(const ParamScalar& x, const ParamScalar& y);
  friend ParamScalar operator-(const ParamScalar& x);
  friend ParamScalar operator*(const ParamScalar& x, const ParamScalar& y);
  ParamScalar& operator+=(const ParamScalar& y);
  ParamScalar& operator-=(const ParamScalar& y);
  ParamScalar& operator*=(const ParamScalar& y) { return *this = *this * y; }
  friend bool operator==(const ParamScalar& x, const ParamScalar& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const ParamScalar& x, const ParamScalar& y) { return !(x == y); }

  /// Exact division by a literal; the divisor must be nonzero.
  ParamScalar divided_by(const GaussRat& d) const;
  /// Exact division by p^power. Throws InexactDivision if some term lacks it.
  ParamScalar divided_by(Param p, unsigned power = 1) const;
  bool divisible_by(Param p, unsigned power = 1) const;

  /// Substitutes exact values for some of the parameters.
  ParamScalar substitute(const ExactBindings& values) const;
  ParamScalar substitute(Param p, const ParamScalar& value) const;

  /// Numeric value; throws UnboundParameter if a used parameter is missing.
  std::complex<double> evaluate(const Bindings& bindings) const;
  /// Exact value; throws UnboundParameter if a used parameter is missing.
  GaussRat evaluate_exact(const ExactBindings& bindings) const;

  /// Printer convention: "-(1/3)*hbar^2", "(3/4)*hbar^2 - a^2", "0".
  std::string to_string() const;

 private:
  void add_term(const ParamExponents& e, const GaussRat& c);
  Terms terms_;
};

// Formatting helpers shared by every polynomial printer.
namespace fmt_detail {

/// One printed summand: a real rational coefficient, an optional factor i,
/// and a list of already formatted factors ("hbar^2", "S1").
struct Summand {
  Rational coeff;
  bool imaginary = false;
  std::vector<std::string> factors;
};

std::string power_factor(std::string_view name, unsigned power);
void append_param_factors(const ParamExponents& e, std::vector<std::string>& out);
/// Splits a scalar times a fixed factor list into printable summands.
void expand_summands(const ParamScalar& s, const std::vector<std::string>& tail,
                     std::vector<Summand>& out);
std::string join_summands(const std::vector<Summand>& summands);

}  // namespace fmt_detail

}  // namespace obstructo
