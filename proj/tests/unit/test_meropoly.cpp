#include "merocurve/meropoly.hpp"

#include <gtest/gtest.h>

#include "merocurve/polygcd.hpp"

namespace merocurve {
namespace {

Series xpow(long e) { return Series::monomial(Num(1), Rat(e)); }
MPoly ypoly(std::map<long, Series> m) { return MPoly::from_coeffs(std::move(m)); }

bool series_eq(const Series& a, const Series& b) {
  return (a - b).is_exact_zero();
}
bool poly_eq(const MPoly& a, const MPoly& b) {
  return (a - b).is_exact_zero();
}

// Y^4 + X^5
MPoly quartic() {
  return ypoly({{4, Series::constant(Num(1))}, {0, xpow(5)}});
}

TEST(MeroPoly, ViewsBasic) {
  MPoly g = quartic();
  EXPECT_EQ(ord_x(g), ExtRat(Rat(0)));
  EXPECT_EQ(deg_y(g), 4);
  KPoly p = inco_x(g);
  EXPECT_EQ(p.deg(), 4);
  EXPECT_TRUE(p[4].is_one());
  EXPECT_TRUE(p[0].is_zero());
  EXPECT_TRUE(series_eq(deco_y(g), Series::constant(Num(1))));
  EXPECT_EQ(ord_total(g), ExtRat(Rat(4)));
  EXPECT_TRUE(poly_eq(info(g), MPoly::y_pow(4)));
  EXPECT_EQ(deg_total(g), 5);
  EXPECT_TRUE(poly_eq(defo(g), MPoly::constant(xpow(5))));

  MPoly zero;
  EXPECT_TRUE(ord_x(zero).is_pos_inf());
  EXPECT_THROW(deg_y(zero), ZeroPolynomial);
  Views vz = views(zero);
  EXPECT_FALSE(vz.deg_y.has_value());
  EXPECT_TRUE(vz.ord_x.is_pos_inf());
  EXPECT_TRUE(vz.ord_total.is_pos_inf());

  // X^-1 Y + X: the minimal total degree 0 is attained only by X^-1 Y.
  MPoly h = ypoly({{1, xpow(-1)}, {0, xpow(1)}});
  EXPECT_EQ(ord_total(h), ExtRat(Rat(0)));
  EXPECT_TRUE(poly_eq(info(h), ypoly({{1, xpow(-1)}})));
  EXPECT_EQ(ord_x(h), ExtRat(Rat(-1)));

  auto sx = supp_x(g);
  ASSERT_EQ(sx.size(), 2u);
  EXPECT_EQ(sx[0], Rat(0));
  EXPECT_EQ(sx[1], Rat(5));
  auto sxy = supp_xy(g);
  ASSERT_EQ(sxy.size(), 2u);
  EXPECT_EQ(sxy[0].second, 4);
  EXPECT_EQ(sxy[1].first, Rat(5));
}

TEST(MeroPoly, ViewsBudgetSoundness) {
  // Y with an O(X^2) constant coefficient: ord_x could be as low as 2.
  MPoly g = ypoly({{1, Series::constant(Num(1))},
                   {0, Series::zero_truncated(ExtRat(Rat(2)))}});
  EXPECT_EQ(ord_x(g), ExtRat(Rat(0)));  // 0 < 2, decidable
  MPoly h = ypoly({{1, xpow(3)},
                   {0, Series::zero_truncated(ExtRat(Rat(2)))}});
  EXPECT_THROW(ord_x(h), PrecisionExhausted);
  EXPECT_THROW(deg_y(ypoly({{2, Series::zero_truncated(ExtRat(Rat(1)))},
                            {0, xpow(0)}})),
               PrecisionExhausted);
  EXPECT_THROW(supp_x(h), PrecisionExhausted);
  EXPECT_THROW(deg_total(h), PrecisionExhausted);
}

TEST(MeroPoly, Partials) {
  MPoly g = quartic();
  EXPECT_TRUE(poly_eq(partial_y(g), ypoly({{3, Series::constant(Num(4))}})));
  EXPECT_TRUE(poly_eq(partial_x(g),
                      MPoly::constant(Series::monomial(Num(5), Rat(4)))));
  EXPECT_TRUE(partial_y(MPoly::constant(xpow(7))).is_exact_zero());

  // Fractional exponents differentiate term by term.
  MPoly f = MPoly::constant(Series::monomial(Num(2), rat(1, 2)));
  EXPECT_TRUE(poly_eq(partial_x(f),
                      MPoly::constant(Series::monomial(Num(1), rat(-1, 2)))));
}

TEST(MeroPoly, Jacobian) {
  MPoly F = ypoly({{2, Series::constant(Num(1))}, {0, -xpow(3)}});
  MPoly negx = MPoly::constant(-xpow(1));
  EXPECT_TRUE(poly_eq(jacobian(F, negx), partial_y(F)));
  EXPECT_TRUE(poly_eq(jacobian(MPoly::y(), MPoly::constant(xpow(1))),
                      MPoly::constant(Series::constant(Num(-1)))));
  EXPECT_TRUE(jacobian(F, F).is_exact_zero());
  EXPECT_TRUE(poly_eq(jacobian(F, quartic()), -jacobian(quartic(), F)));
  // Product rule in Y.
  MPoly G = quartic();
  EXPECT_TRUE(poly_eq(partial_y(F * G),
                      F * partial_y(G) + partial_y(F) * G));
}

TEST(MeroPoly, InitialFormMultiplicativity) {
  MPoly g = ypoly({{1, xpow(-1)}, {0, xpow(1)}});
  MPoly h = ypoly({{2, Series::constant(Num(1))}, {0, xpow(1)}});
  EXPECT_TRUE(poly_eq(info(g * h), info(g) * info(h)));
  EXPECT_TRUE(poly_eq(defo(g * h), defo(g) * defo(h)));
}

TEST(MeroPoly, Resultants) {
  MPoly f1 = ypoly({{1, Series::constant(Num(1))}, {0, -xpow(1)}});
  MPoly g1 = ypoly({{1, Series::constant(Num(1))}, {0, xpow(1)}});
  EXPECT_TRUE(series_eq(resultant_y(f1, g1), Series::monomial(Num(2), Rat(1))));

  MPoly f2 = ypoly({{2, Series::constant(Num(1))}, {0, -xpow(1)}});
  EXPECT_TRUE(series_eq(resultant_y(f2, MPoly::y()), -xpow(1)));

  MPoly f = quartic();
  MPoly fy = partial_y(f);
  EXPECT_TRUE(series_eq(resultant_y(f, fy),
                        Series::monomial(Num(256), Rat(15))));
  EXPECT_EQ(int_mult(f, fy), Rat(15));

  // Swap order: Res(g,f) = (-1)^(deg f * deg g) Res(f,g).
  EXPECT_TRUE(series_eq(resultant_y(g1, f1), -resultant_y(f1, g1)));
  EXPECT_TRUE(series_eq(resultant_y(fy, f), resultant_y(f, fy)));

  // Degenerate degrees.
  EXPECT_TRUE(series_eq(resultant_y(MPoly::constant(xpow(2)), f1), xpow(2)));
  EXPECT_TRUE(resultant_y(MPoly(), f1).is_exact_zero());

  EXPECT_THROW(int_mult(f, MPoly()), ZeroArgument);
  EXPECT_THROW(int_mult(f, f), ZeroArgument);
}

TEST(MeroPoly, ComposeDeformation) {
  MPoly H = quartic();
  auto out = compose_deformation(H, Series(), EdgeTriple{4, 4, 5});
  EXPECT_TRUE(poly_eq(out, ypoly({{4, xpow(20)}, {0, xpow(20)}})));

  auto lin = compose_deformation(MPoly::y(), Series::monomial(Num(1), Rat(2)),
                                 EdgeTriple{1, 1, 3});
  EXPECT_TRUE(poly_eq(lin, ypoly({{1, xpow(3)}, {0, xpow(2)}})));

  auto cx = compose_deformation(MPoly::constant(xpow(1)), Series(),
                                EdgeTriple{1, 3, 1});
  EXPECT_TRUE(poly_eq(cx, MPoly::constant(xpow(3))));

  // (Y - z)^2 deformed along z itself collapses to X^(2W) Y^2.
  Series z = xpow(2) + xpow(3);
  MPoly fz = (MPoly::y() - MPoly::constant(z)) *
             (MPoly::y() - MPoly::constant(z));
  auto d = compose_deformation(fz, z, EdgeTriple{1, 1, 5});
  EXPECT_TRUE(poly_eq(d, ypoly({{2, xpow(10)}})));
}

TEST(MeroPoly, EvalRoot) {
  auto field = Field::make();
  Num k4 = field->adjoin_root(KPoly({Num(1), Num(0), Num(0), Num(0), Num(1)}));
  // k4^4 = -1 kills Y^4 + X^5 at z = k4 X^5 under X -> X^4.
  Series z = Series::monomial(k4, Rat(5));
  EXPECT_TRUE(eval_root(quartic(), 4, z).is_exact_zero());

  EXPECT_TRUE(series_eq(eval_root(MPoly::y(), 1, xpow(2)), xpow(2)));

  MPoly h = ypoly({{1, Series::constant(Num(1))}, {0, -xpow(2)}});
  Series v = eval_root(h, 2, xpow(3));
  EXPECT_TRUE(series_eq(v, xpow(3) - xpow(4)));
  EXPECT_EQ(v.ord_x(), ExtRat(Rat(3)));
}

TEST(PolyGcd, LaurentHelpers) {
  Series a = xpow(-1);
  Series b = xpow(2);
  EXPECT_TRUE(series_eq(laurent_gcd(a, b), xpow(-1)));
  Series c = xpow(2) - Series::constant(Num(1));
  Series d = xpow(1) - Series::constant(Num(1));
  EXPECT_TRUE(series_eq(laurent_divexact(c, d),
                        xpow(1) + Series::constant(Num(1))));
  EXPECT_THROW(laurent_divexact(d, c), Error);
  EXPECT_THROW(laurent_divexact(d, Series()), DivisionByZero);
  // Normalization: lead (lowest-exponent) coefficient is 1.
  Series e = Series::monomial(Num(3), Rat(2));
  EXPECT_TRUE(series_eq(laurent_gcd(e, e), xpow(2)));
}

TEST(PolyGcd, ContentAndPrimitive) {
  MPoly f = ypoly({{1, xpow(2)}, {0, xpow(3)}});
  EXPECT_TRUE(series_eq(poly_content(f), xpow(2)));
  EXPECT_TRUE(poly_eq(primitive_part(f),
                      ypoly({{1, Series::constant(Num(1))}, {0, xpow(1)}})));
}

TEST(PolyGcd, GcdDivisionYun) {
  MPoly ymx = ypoly({{1, Series::constant(Num(1))}, {0, -xpow(1)}});
  MPoly ypx = ypoly({{1, Series::constant(Num(1))}, {0, xpow(1)}});
  MPoly g = gcd_y(ymx * ypx, ymx * MPoly::y());
  EXPECT_TRUE(poly_eq(g, ymx));
  EXPECT_TRUE(poly_eq(gcd_y(ymx, ypx),
                      MPoly::constant(Series::constant(Num(1)))));

  MPoly prod = ymx * ypx * quartic();
  EXPECT_TRUE(poly_eq(divexact_y(prod, quartic()), ymx * ypx));
  EXPECT_THROW(divexact_y(ymx, ypx), Error);

  auto sq = yun_squarefree(ymx * ymx * ypx);
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_EQ(sq[0].first, 1);
  EXPECT_TRUE(poly_eq(sq[0].second, ypx));
  EXPECT_EQ(sq[1].first, 2);
  EXPECT_TRUE(poly_eq(sq[1].second, ymx));

  // Squarefree input: one class of multiplicity 1.
  auto sf = yun_squarefree(quartic());
  ASSERT_EQ(sf.size(), 1u);
  EXPECT_EQ(sf[0].first, 1);
  EXPECT_TRUE(poly_eq(sf[0].second, quartic()));

  // Content is excluded and scalars are irrelevant.
  auto sc = yun_squarefree(MPoly::constant(xpow(3)) * ymx * ymx);
  ASSERT_EQ(sc.size(), 1u);
  EXPECT_EQ(sc[0].first, 2);
  EXPECT_TRUE(poly_eq(sc[0].second, ymx));
}

TEST(MeroPoly, JacobianOrderEstimate) {
  // F = X^-1 Y + X, G = Y + X: orders -1 and 0, equality case of the
  // order estimate: ord J = -2 and inco J = -Y.
  MPoly F = ypoly({{1, xpow(-1)}, {0, xpow(1)}});
  MPoly G = ypoly({{1, Series::constant(Num(1))}, {0, xpow(1)}});
  MPoly J = jacobian(F, G);
  EXPECT_EQ(ord_x(J), ExtRat(Rat(-2)));
  KPoly P = inco_x(F);
  KPoly Q = inco_x(G);
  // N# P Q_Y - M# P_Y Q with N# = -1, M# = 0.
  KPoly expect = KPoly::constant(Num(-1)) * P * Q.derivative();
  KPoly got = inco_x(J);
  EXPECT_TRUE((got - expect).is_zero());
}

}  // namespace
}  // namespace merocurve
