#include "merocurve/newton.hpp"

#include <gtest/gtest.h>

#include "merocurve/polygcd.hpp"

namespace merocurve {
namespace {

Series xpow(long e) { return Series::monomial(Num(1), Rat(e)); }
Series one() { return Series::constant(Num(1)); }
MPoly ypoly(std::map<long, Series> m) { return MPoly::from_coeffs(std::move(m)); }

// No stored coefficient survives in the difference; exact parts may still be
// shadowed by finite budgets.
bool agree(const MPoly& a, const MPoly& b) {
  MPoly d = a - b;
  for (const auto& [j, s] : d.coeffs())
    if (s.has_terms()) return false;
  return true;
}
bool poly_eq(const MPoly& a, const MPoly& b) {
  return (a - b).is_exact_zero();
}

// Y^4 + X^5
MPoly quartic() { return ypoly({{4, one()}, {0, xpow(5)}}); }

// (Y^2 - X^(2a+1))^2 - X^(3a+b+2) Y
MPoly biquartic(long a, long b) {
  MPoly w = ypoly({{2, one()}, {0, -xpow(2 * a + 1)}});
  return w * w - ypoly({{1, xpow(3 * a + b + 2)}});
}

TEST(Newton, PolygonShapes) {
  NewtonPolygon p = newton_polygon(quartic());
  EXPECT_EQ(p.zero_mult, 0);
  ASSERT_EQ(p.faces.size(), 1u);
  EXPECT_EQ(p.faces[0].slope, rat(-5, 4));
  EXPECT_EQ(p.faces[0].length, 4);
  EXPECT_EQ(p.faces[0].j_low, 0);
  EXPECT_EQ(p.faces[0].poly.deg(), 4);
  EXPECT_TRUE(p.faces[0].poly[0].is_one());
  EXPECT_TRUE(p.faces[0].poly[4].is_one());
  EXPECT_TRUE(p.faces[0].poly[1].is_zero());

  // (Y^2 - X^3)^2 - X^5 Y: one face through (0,6), (2,3), (4,0).
  NewtonPolygon q = newton_polygon(biquartic(1, 0));
  EXPECT_EQ(q.zero_mult, 0);
  ASSERT_EQ(q.faces.size(), 1u);
  EXPECT_EQ(q.faces[0].slope, rat(-3, 2));
  EXPECT_EQ(q.faces[0].length, 4);
  // Face polynomial (T^2 - 1)^2; the interior point (1,5) sits above.
  KPoly fp = q.faces[0].poly;
  EXPECT_EQ(fp.deg(), 4);
  EXPECT_TRUE(fp[1].is_zero());
  EXPECT_TRUE(fp[3].is_zero());
  EXPECT_TRUE((fp[2] + Num(2)).is_zero());

  NewtonPolygon r = newton_polygon(MPoly::y());
  EXPECT_EQ(r.zero_mult, 1);
  EXPECT_TRUE(r.faces.empty());

  // X^-1 Y + 1 has the root -X: slope -1, face polynomial T + 1.
  NewtonPolygon s = newton_polygon(ypoly({{1, xpow(-1)}, {0, one()}}));
  ASSERT_EQ(s.faces.size(), 1u);
  EXPECT_EQ(s.faces[0].slope, Rat(-1));
  EXPECT_TRUE(s.faces[0].poly[0].is_one());
  EXPECT_TRUE(s.faces[0].poly[1].is_one());

  // Y + X^-2 has a root of order -2: positive slope.
  NewtonPolygon t = newton_polygon(ypoly({{1, one()}, {0, xpow(-2)}}));
  ASSERT_EQ(t.faces.size(), 1u);
  EXPECT_EQ(t.faces[0].slope, Rat(2));

  EXPECT_THROW(newton_polygon(MPoly()), ZeroPolynomial);
}

TEST(Newton, RootsQuartic) {
  std::vector<Branch> roots = puiseux_roots(quartic(), Rat(2));
  ASSERT_EQ(roots.size(), 1u);
  const Branch& b = roots[0];
  EXPECT_EQ(b.n, 4);
  EXPECT_TRUE(b.root.is_exact());
  auto terms = b.root.terms();
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0].first, Rat(5));
  Num kappa = terms[0].second;
  EXPECT_TRUE((kappa.pow(4) + Num(1)).is_zero());

  EXPECT_TRUE(agree(branch_poly(b), quartic()));
  ASSERT_EQ(conjugates(b).size(), 4u);
}

TEST(Newton, RootsBiquartic) {
  MPoly f = biquartic(1, 0);
  std::vector<Branch> roots = puiseux_roots(f, Rat(3));
  ASSERT_EQ(roots.size(), 1u);
  const Branch& b = roots[0];
  EXPECT_EQ(b.n, 4);
  EXPECT_GE(b.prec(), ExtRat(Rat(9)));
  // One conjugate is z(X) = X^6 + 1/2 X^7 + 0 X^8 + ... on the X^4 grid.
  int hits = 0;
  for (const Series& z : conjugates(b)) {
    if (!z.coeff_at(Rat(6)).is_one()) continue;
    if (!(z.coeff_at(Rat(7)) - Num(rat(1, 2))).is_zero()) continue;
    ++hits;
    EXPECT_TRUE(z.coeff_at(Rat(8)).is_zero());
  }
  EXPECT_EQ(hits, 1);
  EXPECT_TRUE(agree(branch_poly(b), f));

  Series residual = eval_root(f, 4, b.root);
  EXPECT_FALSE(residual.has_terms());
}

TEST(Newton, RootsSplitPair) {
  // Y^2 - X^2 (1 + X) splits into two unramified branches.
  MPoly f = ypoly({{2, one()}, {0, -xpow(2) - xpow(3)}});
  std::vector<Branch> roots = puiseux_roots(f, Rat(4));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].n, 1);
  EXPECT_EQ(roots[1].n, 1);
  Series sum = roots[0].root + roots[1].root;
  EXPECT_FALSE(sum.has_terms());
  for (const Branch& b : roots) {
    Series sq = b.root * b.root - (xpow(2) + xpow(3));
    EXPECT_FALSE(sq.has_terms());
    Num c1 = b.root.coeff_at(Rat(1));
    EXPECT_TRUE((c1 * c1 - Num(1)).is_zero());
    // c2 = c1/2, c3 = -c1/8 from the binomial series.
    EXPECT_TRUE((b.root.coeff_at(Rat(2)) - c1 * Num(rat(1, 2))).is_zero());
    EXPECT_TRUE((b.root.coeff_at(Rat(3)) + c1 * Num(rat(1, 8))).is_zero());
  }
  EXPECT_TRUE(agree(branch_poly(roots[0]) * branch_poly(roots[1]), f));
}

TEST(Newton, RootErrors) {
  EXPECT_THROW(puiseux_roots(MPoly(), Rat(1)), ZeroPolynomial);
  EXPECT_THROW(puiseux_roots(ypoly({{2, one()}}), Rat(1)), NotSquarefree);
  EXPECT_THROW(puiseux_roots(ypoly({{1, xpow(1)}, {0, one()}}), Rat(1)),
               NotMonic);
  EXPECT_TRUE(puiseux_roots(MPoly::constant(one()), Rat(1)).empty());
}

TEST(Newton, SquarefreePart) {
  MPoly ymx = ypoly({{1, one()}, {0, -xpow(1)}});
  MPoly ypx = ypoly({{1, one()}, {0, xpow(1)}});
  auto [sf1, flag1] = squarefree_part(ymx * ymx * ypx);
  EXPECT_TRUE(flag1);
  EXPECT_TRUE(poly_eq(sf1, ymx * ypx));

  auto [sf2, flag2] = squarefree_part(quartic());
  EXPECT_FALSE(flag2);
  EXPECT_TRUE(poly_eq(sf2, quartic()));

  auto [sf3, flag3] = squarefree_part(ypoly({{2, one()}}));
  EXPECT_TRUE(flag3);
  EXPECT_TRUE(poly_eq(sf3, MPoly::y()));

  // (XY - 1)^2: the monomial lead X divides out, leaving Y - X^-1.
  MPoly u = ypoly({{1, xpow(1)}, {0, -one()}});
  auto [sf4, flag4] = squarefree_part(u * u);
  EXPECT_TRUE(flag4);
  EXPECT_TRUE(poly_eq(sf4, ypoly({{1, one()}, {0, -xpow(-1)}})));

  EXPECT_THROW(squarefree_part(MPoly::constant(xpow(2))), ConstantInput);
}

TEST(Newton, FactorBasics) {
  Factorization fx = factor(ypoly({{1, xpow(1)}}));
  EXPECT_TRUE((fx.content - xpow(1)).is_exact_zero());
  ASSERT_EQ(fx.factors.size(), 1u);
  EXPECT_EQ(fx.chi, 1);
  EXPECT_EQ(fx.factors[0].first.n, 1);
  EXPECT_TRUE(fx.factors[0].first.root.is_exact_zero());

  Factorization fc = factor(MPoly::constant(xpow(3)));
  EXPECT_EQ(fc.chi, 0);
  EXPECT_TRUE(fc.factors.empty());
  EXPECT_TRUE((fc.content - xpow(3)).is_exact_zero());

  EXPECT_THROW(factor(MPoly()), ZeroPolynomial);
}

TEST(Newton, FactorWithMultiplicity) {
  MPoly ymx = ypoly({{1, one()}, {0, -xpow(1)}});
  MPoly F = MPoly::y() * ymx * ymx;
  Factorization fac = factor(F);
  EXPECT_EQ(fac.chi, 3);
  ASSERT_EQ(fac.factors.size(), 2u);
  MPoly rebuilt = MPoly::constant(fac.content);
  for (const auto& [b, mult] : fac.factors) {
    MPoly g = branch_poly(b);
    for (long t = 0; t < mult; ++t) rebuilt = rebuilt * g;
  }
  EXPECT_TRUE(agree(rebuilt, F));
  long m0 = fac.factors[0].second, m1 = fac.factors[1].second;
  EXPECT_EQ(m0 + m1, 3);
  EXPECT_EQ(std::max(m0, m1), 2);
}

TEST(Newton, FactorQuinticWithPole) {
  // Y^5 + X^-1 Y^3 + Y + 1 splits into degrees 2 and 3.
  MPoly F = ypoly({{5, one()}, {3, xpow(-1)}, {1, one()}, {0, one()}});
  NewtonOptions opt;
  opt.precision = Rat(5);
  Factorization fac = factor(F, opt);
  EXPECT_EQ(fac.chi, 2);
  ASSERT_EQ(fac.factors.size(), 2u);
  EXPECT_EQ(fac.factors[0].first.n, 2);
  EXPECT_EQ(fac.factors[1].first.n, 3);
  EXPECT_TRUE((fac.content - one()).is_exact_zero());

  // The quadratic factor carries the order -1/2 roots, the cubic the
  // order 1/3 roots.
  EXPECT_EQ(fac.factors[0].first.root.ord_x(), ExtRat(Rat(-1)));
  EXPECT_EQ(fac.factors[1].first.root.ord_x(), ExtRat(Rat(1)));

  MPoly rebuilt = MPoly::constant(fac.content);
  for (const auto& [b, mult] : fac.factors)
    for (long t = 0; t < mult; ++t) rebuilt = rebuilt * branch_poly(b);
  EXPECT_TRUE(agree(rebuilt, F));
}

TEST(Newton, FactorQuinticDroppedUnit) {
  // Y^5 + X^-1 Y^3 + Y = Y (Y^4 + X^-1 Y^2 + 1): degrees 1, 2, 2.
  MPoly F = ypoly({{5, one()}, {3, xpow(-1)}, {1, one()}});
  NewtonOptions opt;
  opt.precision = Rat(5);
  Factorization fac = factor(F, opt);
  EXPECT_EQ(fac.chi, 3);
  ASSERT_EQ(fac.factors.size(), 3u);
  EXPECT_EQ(fac.factors[0].first.n, 1);
  EXPECT_TRUE(fac.factors[0].first.root.is_exact_zero());
  EXPECT_EQ(fac.factors[1].first.n, 2);
  EXPECT_EQ(fac.factors[2].first.n, 2);
  std::vector<Rat> ords{fac.factors[1].first.root.ord_x().value(),
                        fac.factors[2].first.root.ord_x().value()};
  std::sort(ords.begin(), ords.end());
  EXPECT_EQ(ords[0], Rat(-1));
  EXPECT_EQ(ords[1], Rat(1));
}

TEST(Newton, RefineExtends) {
  MPoly f = biquartic(1, 0);
  NewtonOptions opt;
  opt.precision = Rat(2);
  Factorization fac = factor(f, opt);
  ASSERT_EQ(fac.factors.size(), 1u);
  Branch b = fac.factors[0].first;
  ASSERT_FALSE(b.root.is_exact());
  Branch b2 = refine(b, Rat(16));
  EXPECT_GE(b2.prec(), ExtRat(Rat(16)));
  // The old stored prefix survives unchanged.
  Series diff = truncate(b2.root, b.prec()) - b.root;
  EXPECT_FALSE(diff.has_terms());
  // Refinement below current precision is the identity.
  Branch b3 = refine(b2, Rat(4));
  EXPECT_EQ(b3.prec(), b2.prec());

  std::vector<Branch> qr = puiseux_roots(quartic(), Rat(1));
  Branch exact = refine(qr[0], Rat(100));
  EXPECT_TRUE(exact.root.is_exact());
}

TEST(Newton, IntersectionMultiplicity) {
  std::vector<Branch> qr = puiseux_roots(quartic(), Rat(2));
  const Branch& b = qr[0];
  MPoly fy = partial_y(quartic());
  EXPECT_EQ(int_mult(b, fy), Rat(15));
  EXPECT_EQ(sylvester_resultant(quartic(), fy).ord_x(), ExtRat(Rat(15)));
  EXPECT_THROW(int_mult(b, quartic()), ZeroArgument);
  EXPECT_THROW(int_mult(b, MPoly()), ZeroArgument);

  // (Y^2 - X^3)^2 - X^5 Y meets the two derivative factors in 6 and 13.
  // With both arguments reduced to branches the meeting order is symmetric,
  // so evaluate the exact curve along each derivative branch.
  MPoly f = biquartic(1, 0);
  Factorization dfac = factor(partial_y(f));
  ASSERT_EQ(dfac.factors.size(), 2u);
  EXPECT_TRUE((dfac.content - Series::constant(Num(4))).is_exact_zero());
  EXPECT_EQ(dfac.factors[0].first.n, 1);
  EXPECT_EQ(dfac.factors[1].first.n, 2);
  EXPECT_EQ(int_mult(dfac.factors[0].first, f), Rat(6));
  EXPECT_EQ(int_mult(dfac.factors[1].first, f), Rat(13));
  EXPECT_EQ(sylvester_resultant(f, partial_y(f)).ord_x(), ExtRat(Rat(19)));

  // A pole-side branch: Y^2 - X^-3 meets Y in order -3.
  MPoly g = ypoly({{2, one()}, {0, -xpow(-3)}});
  std::vector<Branch> gr = puiseux_roots(g, Rat(2));
  ASSERT_EQ(gr.size(), 1u);
  EXPECT_EQ(gr[0].n, 2);
  EXPECT_EQ(int_mult(gr[0], MPoly::y()), Rat(-3));
  EXPECT_TRUE(agree(branch_poly(gr[0]), g));
}

TEST(Newton, Deterministic) {
  MPoly F = ypoly({{5, one()}, {3, xpow(-1)}, {1, one()}, {0, one()}});
  NewtonOptions opt;
  opt.precision = Rat(4);
  Factorization a = factor(F, opt);
  Factorization c = factor(F, opt);
  ASSERT_EQ(a.factors.size(), c.factors.size());
  for (size_t i = 0; i < a.factors.size(); ++i) {
    EXPECT_EQ(a.factors[i].first.n, c.factors[i].first.n);
    EXPECT_EQ(a.factors[i].first.root.str(), c.factors[i].first.root.str());
  }
}

}  // namespace
}  // namespace merocurve
