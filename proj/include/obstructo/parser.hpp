#pragma once

#include <string_view>

#include "obstructo/poisson.hpp"

namespace obstructo {

/// Parses an observable on `space`.
///
///   expr   := term (("+" | "-") term)*
///   term   := factor (("*" factor) | ("/" rational))*
///   factor := atom ["^" uint]
///   atom   := rational | symbol | "(" expr ")" | "{" expr "," expr "}" | "-" factor
///
/// Symbols are the space generators, the parameters and i. On r2n(1) the
/// names q1, p1 are accepted for q, p. Unary minus binds looser than "^",
/// so -q^2 is -(q^2). Throws SyntaxError or UnknownSymbol.
PoissonPoly parse_expr(std::string_view text, const SpacePtr& space);

}  // namespace obstructo
