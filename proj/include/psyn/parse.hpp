#pragma once

#include "psyn/polynomial.hpp"

#include <string_view>

namespace psyn {

// Grammar (whitespace is insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*      -- '/' only by nonzero constants
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' natural)?
//   primary := number | ident | '(' expr ')'
//   number  := digits ('.' digits?)? | '.' digits
//   ident   := [A-Za-z_$][A-Za-z0-9_$']*
Polynomial parse_poly(std::string_view text);

// Canonical text; parse_poly(render_poly(f)) == f for identifier-named parameters.
inline std::string render_poly(const Polynomial &f) { return f.str(); }

bool is_identifier(std::string_view name);

} // namespace psyn
