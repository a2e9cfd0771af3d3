#include "obstructo/parser.hpp"

#include <cctype>

#include "obstructo/error.hpp"

namespace obstructo {

namespace {

class Parser {
 public:
  Parser(std::string_view text, SpacePtr space) : text_(text), space_(std::move(space)) {}

  PoissonPoly parse() {
    PoissonPoly e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  /// digits ["/" digits], with the slash only consumed when digits follow.
  Rational rational() {
    skip_space();
    Rational r(digits());
    std::size_t save = pos_;
    if (accept('/') && at_digit()) {
      std::size_t at = pos_;
      Rational den(digits());
      if (sgn(den) == 0) {
        pos_ = at;
        fail("division by zero");
      }
      r /= den;
    } else {
      pos_ = save;
    }
    r.canonicalize();
    return r;
  }

  PoissonPoly constant(const ParamScalar& c) const { return PoissonPoly(space_, c); }

  PoissonPoly expr() {
    PoissonPoly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  PoissonPoly term() {
    PoissonPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        if (!at_digit()) fail("division is only allowed by a rational literal");
        std::size_t at = pos_;
        Rational d = rational();
        if (sgn(d) == 0) {
          pos_ = at;
          fail("division by zero");
        }
        Rational inv = 1 / d;
        inv.canonicalize();
        acc = ParamScalar(GaussRat(inv)) * acc;
      } else {
        return acc;
      }
    }
  }

  PoissonPoly factor() {
    PoissonPoly base = atom();
    if (accept('^')) {
      if (!at_digit()) fail("expected a nonnegative integer exponent");
      std::size_t at = pos_;
      std::string e = digits();
      if (e.size() > 4) {
        pos_ = at;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  PoissonPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return constant(ParamScalar(GaussRat(rational())));
    if (accept('(')) {
      PoissonPoly e = expr();
      expect(')');
      return e;
    }
    if (accept('{')) {
      PoissonPoly f = expr();
      expect(',');
      PoissonPoly g = expr();
      expect('}');
      return bracket(f, g);
    }
    if (accept('-')) return -factor();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return symbol();
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  PoissonPoly symbol() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "i") return constant(ParamScalar::i());
    if (space_->ring->index_of(name) >= 0) return PoissonPoly::generator(space_, name);
    if (space_->kind == SpaceKind::r2n && space_->n == 1 && (name == "q1" || name == "p1"))
      return PoissonPoly::generator(space_, name.substr(0, 1));
    if (auto p = try_param_from_name(name)) return constant(ParamScalar::param(*p));
    throw UnknownSymbol("unknown symbol '" + name + "' at byte " + std::to_string(start) + " for space " +
                        space_->name);
  }

  std::string_view text_;
  SpacePtr space_;
  std::size_t pos_ = 0;
};

}  // namespace

PoissonPoly parse_expr(std::string_view text, const SpacePtr& space) { return Parser(text, space).parse(); }

}  // namespace obstructo
