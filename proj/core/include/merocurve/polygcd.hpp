#pragma once

#include <utility>
#include <vector>

#include "merocurve/meropoly.hpp"

namespace merocurve {

// Exact arithmetic for polynomials in Y with Laurent-polynomial coefficients
// over k. Every function here requires is_laurent on its polynomial inputs.

// gcd in k[X, X^-1], normalized with lead coefficient (lowest exponent) 1.
Series laurent_gcd(const Series& a, const Series& b);
// Exact quotient a/b in k[X, X^-1]; throws DivisionByZero for b = 0 and
// Error when b does not divide a.
Series laurent_divexact(const Series& a, const Series& b);

// gcd of all coefficients, normalized as in laurent_gcd; zero input gives 0.
Series poly_content(const MPoly& f);
// f / poly_content(f); every coefficient then lies in k[X] with overall
// X-content 1.
MPoly primitive_part(const MPoly& f);

// Pseudo-division: lc(g)^(deg f - deg g + 1) * f = q*g + r with
// deg_Y r < deg_Y g. Requires deg f >= deg g >= 0.
void pseudo_divrem(const MPoly& f, const MPoly& g, MPoly& q, MPoly& r);

// Exact quotient f/g; throws Error when g does not divide f.
MPoly divexact_y(const MPoly& f, const MPoly& g);

// Primitive gcd in k[X][Y] up to a scalar, via a primitive remainder
// sequence; constant 1 when the primitive parts are coprime.
MPoly gcd_y(const MPoly& f, const MPoly& g);

// Squarefree decomposition of the primitive part: pairwise coprime primitive
// g_i with primitive_part(f) = u * prod g_i^(m_i) for a scalar u; entries are
// (m_i, g_i) with deg_Y g_i >= 1, in increasing m_i.
std::vector<std::pair<long, MPoly>> yun_squarefree(const MPoly& f);

// Sylvester determinant of (f, g) by fraction-free elimination.
Series sylvester_resultant(const MPoly& f, const MPoly& g);

}  // namespace merocurve
