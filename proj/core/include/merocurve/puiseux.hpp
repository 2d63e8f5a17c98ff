#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "merocurve/algebraic.hpp"
#include "merocurve/errors.hpp"
#include "merocurve/rational.hpp"

namespace merocurve {

// Edge data (U, V, W) for deformations z(X) -> z|(X) + X^W Y under X -> X^V.
// z must have integer support; on the edge, every support exponent i below
// W*U/V has i*V/U integral and the truncation maps X^i to X^(i*V/U). U and V
// are positive; W may be any sign.
struct EdgeTriple {
  long U = 1;
  long V = 1;
  long W = 0;
};

// Puiseux series with exact coefficients and an explicit truncation budget:
// the terms with exponent below trunc() are known exactly, anything at or
// beyond trunc() is unknown. trunc() == +inf means the series is exact.
//
// Invariants: stored coefficients are (decided) nonzero, stored exponents lie
// below the budget, and the ramification denominator is minimal.
class Series {
 public:
  Series() : ram_(1), tau_(ExtRat::pos_inf()) {}

  // Zero up to the given budget (unknown from tau on).
  static Series zero_truncated(const ExtRat& tau);
  static Series monomial(const Num& c, const Rat& e);
  static Series constant(const Num& c) { return monomial(c, Rat(0)); }
  // Assembles a series from grid terms: key i means exponent i/ram.
  static Series from_terms(long ram, std::map<long, Num> terms,
                           const ExtRat& tau);

  long ram() const { return ram_; }
  const ExtRat& trunc() const { return tau_; }
  bool is_exact() const { return tau_.is_pos_inf(); }
  bool has_terms() const { return !c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && is_exact(); }
  const std::map<long, Num>& raw() const { return c_; }

  // Minimal exponent if any term is stored, otherwise the budget; never
  // throws. This is the best known lower bound for ord_x.
  ExtRat ord_bound() const;

  // Order of the series: minimal exponent of the support, +inf for the exact
  // zero. Throws PrecisionExhausted when every stored term vanishes but the
  // budget is finite, since the order is then undetermined.
  ExtRat ord_x() const;

  // Coefficient of X^e; e must lie below the budget.
  Num coeff_at(const Rat& e) const;
  // Coefficient at ord_x (requires a stored term).
  Num lead_coeff() const;

  // Terms as (exponent, coefficient), in increasing exponent order.
  std::vector<std::pair<Rat, Num>> terms() const;

  std::string str() const;

 private:
  long ram_;
  std::map<long, Num> c_;
  ExtRat tau_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);
Series operator*(const Num& s, const Series& a);

// c * X^e * a
Series mul_monomial(const Series& a, const Num& c, const Rat& e);

// Multiplicative inverse of a unit, with result terms known below `budget`.
// The attainable budget from a truncated input is trunc - 2*ord and the
// result carries the smaller of the two. A non-monomial exact input requires
// a finite budget.
Series invert(const Series& a, const ExtRat& budget);

// z(X^V) for integer V >= 1: exponents and budget scale by V.
Series substitute_pow(const Series& a, long V);
// Regrids onto the X^(1/k) lattice: exponents and budget divide by k >= 1.
Series substitute_root(const Series& a, long k);
// z(cX) for a unit c; requires integral support.
Series rescale(const Series& a, const Num& c);
// Drops terms at or above tau and caps the budget at tau.
Series truncate(const Series& a, const ExtRat& tau);
Series pow(const Series& a, long k);  // k >= 0

// d/dX: c X^e -> c e X^(e-1); the budget drops by one.
Series derivative_x(const Series& a);

// True when z lies on the edge (U,V,W): every support exponent i below
// W*U/V must satisfy i*V/U integral. Requires integral support and enough
// budget to see all of the support below W*U/V.
bool edge_contains(const Series& z, const EdgeTriple& t);

// Exact truncation sum_{i < W*U/V} z[i] X^(i*V/U); NotOnEdge when z is not
// on the edge.
Series trunc_dagger(const Series& z, const EdgeTriple& t);

// trunc_dagger plus the boundary term z[W*U/V] X^W (zero when W*U/V is not
// in the support grid).
Series trunc_dagger_star(const Series& z, const EdgeTriple& t);

// The deformation data (z truncated along the edge, the triple itself); the
// full deformed object z| + X^W Y lives at the polynomial level.
std::pair<Series, EdgeTriple> deform(const Series& z, const EdgeTriple& t);

}  // namespace merocurve
