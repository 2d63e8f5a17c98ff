#pragma once

#include <string>

#include "merocurve/meropoly.hpp"

namespace merocurve {

// Parses an expression in X and Y into an exact Laurent MPoly.
//
//   expr   := '-'? term (('+' | '-') term)*
//   term   := factor ('*'? factor)*
//   factor := base ('^' exponent)?
//   base   := 'X' | 'Y' | rational | '(' expr ')'
//   exponent := int | '(' int ')'          (int optionally signed)
//   rational := digits ('/' digits)?
//
// Whitespace is insignificant; adjacent factors multiply. A negative
// exponent is accepted on the bare variable X only: on Y it raises
// NegativeYExponent, elsewhere SyntaxError. All other malformed input
// raises SyntaxError carrying the byte offset of the offending token.
MPoly parse_poly(const std::string& input);

// Canonical text form: terms sorted by descending Y-power, then increasing
// X-exponent, joined with binary +/- and explicit '*' between atoms.
// Negative X-exponents print parenthesized ("X^(-2)"). The output reparses
// to the same polynomial. Requires rational coefficients with integer
// X-exponents (the image of parse_poly).
std::string print_poly(const MPoly& p);

}  // namespace merocurve
