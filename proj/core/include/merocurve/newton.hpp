#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "merocurve/meropoly.hpp"

namespace merocurve {

// One face of the lower Newton polygon: the segment of slope `slope` from
// Y-power j_low spanning `length` Y-powers. `poly` collects the coefficients
// of the lattice points on the face as a polynomial in T with
// T^(j - j_low); its nonzero roots T = gamma are the leading coefficients of
// the roots of order -slope.
struct PolygonFace {
  Rat slope;
  long length = 0;
  long j_low = 0;
  KPoly poly;
};

// zero_mult counts the zero roots (the Y^zero_mult factor); faces are
// ordered by increasing slope, i.e. decreasing root order.
struct NewtonPolygon {
  long zero_mult = 0;
  std::vector<PolygonFace> faces;
};

// An irreducible monic factor of degree n, represented by one root:
// f(X^n, z(X)) = 0 with z supported on integers. The other n-1 roots are the
// twists z(unity^t X). Exponent budgets of z are measured on the X^n grid,
// so a budget tau*n resolves the factor to X-resolution tau.
struct Branch {
  long n = 1;
  Series root;
  std::shared_ptr<const MPoly> origin;  // exact parent, drives refinement
  FieldPtr field;

  ExtRat prec() const { return root.trunc(); }
};

// F = content * prod factors[i]^mult[i] with monic irreducible factors;
// chi counts factors with multiplicity, so chi = 0 exactly for F free of Y.
struct Factorization {
  Series content;
  std::vector<std::pair<Branch, long>> factors;
  long chi = 0;
  FieldPtr field;
};

struct NewtonOptions {
  std::optional<Rat> precision;    // requested X-resolution of the roots
  long max_precision_factor = 64;  // cap multiplier over the automatic budget
  FieldPtr field;                  // coefficient tower; created when absent
};

// Lower convex hull of the (Y-power, X-order) support. Throws
// ZeroPolynomial for 0; requires exact Laurent-polynomial coefficients.
NewtonPolygon newton_polygon(const MPoly& f);

// All roots of a monic squarefree f, one Branch per irreducible factor.
std::vector<Branch> puiseux_roots(const MPoly& f, const Rat& tau,
                                  const NewtonOptions& opt = {});

// (F / gcd(F, F_Y) scaled toward monic, deg gcd > 0). The quotient is made
// monic when its Y-degree coefficient is a monomial; otherwise its lead
// scalar is normalized to 1.
std::pair<MPoly, bool> squarefree_part(const MPoly& F);

// Full factorization over k((X)): content = deco_y(F), branches from the
// squarefree classes with their multiplicities, canonically ordered by
// (degree, root terms).
Factorization factor(const MPoly& F, const NewtonOptions& opt = {});

// Extends the root to budget tau2 (X^n grid) by Newton iteration against
// the exact origin; stored coefficients never change.
Branch refine(const Branch& b, const Rat& tau2);

// The n twisted roots z(unity^t X), t = 0..n-1.
std::vector<Series> conjugates(const Branch& b);

// The monic irreducible factor itself: prod_t (Y - z(unity^t X)) descended
// from the X^n grid back to X. Coefficient budgets reflect the root budget.
MPoly branch_poly(const Branch& b);

// ord_X g(X^n, z(X)), refining the branch on demand until the order is
// determined; exact Laurent g. Throws ZeroArgument for g = 0 and
// PrecisionCapExceeded when refinement hits the cap.
Rat int_mult(const Branch& b, const MPoly& g);

}  // namespace merocurve
