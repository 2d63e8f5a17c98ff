#include "merocurve/contact.hpp"

#include <gtest/gtest.h>

#include <map>

namespace merocurve {
namespace {

Series xpow(long e) { return Series::monomial(Num(1), Rat(e)); }
Series one() { return Series::constant(Num(1)); }
MPoly ypoly(std::map<long, Series> m) { return MPoly::from_coeffs(std::move(m)); }

MPoly quartic() { return ypoly({{4, one()}, {0, xpow(5)}}); }

MPoly biquartic(long a, long b) {
  MPoly w = ypoly({{2, one()}, {0, -xpow(2 * a + 1)}});
  return w * w - ypoly({{1, xpow(3 * a + b + 2)}});
}

// Y^5 + X^-1 Y^3 + Y + 1: factors of degree 2 (root order -1/2) and 3
// (root order 1/3).
MPoly quintic() {
  return ypoly({{5, one()}, {3, xpow(-1)}, {1, one()}, {0, one()}});
}

// Y^5 + X^-1 Y^3 + Y = Y (Y^4 + X^-1 Y^2 + 1): adds the Y branch and splits
// the quartic into two degree-2 branches of root orders -1/2 and 1/2.
MPoly quintic_dropped() {
  return ypoly({{5, one()}, {3, xpow(-1)}, {1, one()}});
}

Rat level_of(const ContactTree& T, size_t bud) {
  return T.buds.at(bud).level.value();
}

// The reduced polynomial Y^(Dstar/D) - E0 of a strict friend at bud level.
KPoly friend_poly(const StrictFriend& fr, long D) {
  EXPECT_EQ(fr.Dstar % D, 0);
  const long deg = fr.Dstar / D;
  std::vector<Num> c(static_cast<size_t>(deg) + 1, Num(0));
  c[0] = Num(0) - fr.E0;
  c[static_cast<size_t>(deg)] = Num(1);
  return KPoly(std::move(c));
}

// Structural checks on a tree built from a full contact set: the roof
// partitions the stem and matches the strict friends bud for bud, the
// degree counts add up across the preroof, friends' reduced polynomials are
// pairwise coprime, and level data agrees across every stem.
void expect_tree_invariants(const ContactTree& T) {
  for (size_t bi = 0; bi < T.buds.size(); ++bi) {
    const Bud& B = T.buds[bi];
    ASSERT_FALSE(B.stem.empty());
    if (bi == 0) {
      EXPECT_TRUE(B.level.is_neg_inf());
      EXPECT_EQ(B.parent, -1);
      EXPECT_FALSE(B.data.has_value());
    } else {
      ASSERT_TRUE(B.data.has_value());
      ASSERT_GE(B.parent, 0);
      EXPECT_TRUE(T.buds[static_cast<size_t>(B.parent)].level < B.level);
    }

    const std::vector<StrictFriend> fr = strict_friends(T, bi);
    ASSERT_FALSE(fr.empty());
    if (bi == 0) EXPECT_EQ(fr.size(), 1u);

    const std::vector<size_t> rf = roof(T, bi);
    EXPECT_EQ(rf.empty(), B.level == T.levels.back());
    if (!rf.empty()) {
      // the roof splits the stem, and mirrors the strict classes
      std::vector<size_t> merged;
      for (size_t r : rf) {
        const Bud& C = T.buds[r];
        merged.insert(merged.end(), C.stem.begin(), C.stem.end());
        EXPECT_EQ(C.parent, static_cast<long>(bi));
      }
      std::sort(merged.begin(), merged.end());
      EXPECT_EQ(merged, B.stem);
      ASSERT_EQ(fr.size(), rf.size());
      for (size_t i = 0; i < rf.size(); ++i) {
        EXPECT_EQ(fr[i].members, T.buds[rf[i]].stem);
        EXPECT_EQ(fr[i].Dstar, T.buds[rf[i]].data->D);
      }
    } else {
      // leaf classes are singletons whose strict degree is the full degree
      ASSERT_EQ(fr.size(), B.stem.size());
      for (size_t i = 0; i < fr.size(); ++i) {
        EXPECT_EQ(fr[i].members, std::vector<size_t>{B.stem[i]});
        EXPECT_EQ(fr[i].Dstar, T.branches[B.stem[i]].n);
      }
    }

    long acc = d_prime(T, bi);
    for (size_t q : preroof(T, bi)) acc += d_prime(T, q);
    EXPECT_EQ(d_double_prime(T, bi), acc);

    if (bi > 0 && fr.size() >= 2) {
      const long D = B.data->D;
      for (size_t i = 0; i < fr.size(); ++i)
        for (size_t j = i + 1; j < fr.size(); ++j) {
          KPoly g = kpoly_gcd_monic(friend_poly(fr[i], D), friend_poly(fr[j], D));
          EXPECT_EQ(g.deg(), 0) << "friends " << i << "," << j;
        }
    }

    if (bi > 0) {
      // every stem member reproduces the cached level data once its root is
      // aligned with the representative's
      const Rat lam = B.level.value();
      const Branch& ref = T.branches[B.stem.front()];
      const LambdaData& refd = *B.data;
      CharSeq refc = char_seq(ref);
      for (size_t i : B.stem) {
        Branch al = (i == B.stem.front())
                        ? ref
                        : aligned_branch(ref, T.branches[i]);
        LambdaData ld = lambda_data(al, lam);
        EXPECT_EQ(ld.p, refd.p);
        EXPECT_EQ(ld.D, refd.D);
        EXPECT_EQ(ld.S, refd.S);
        EXPECT_TRUE((ld.A - refd.A).is_zero());
        CharSeq cs = char_seq(al);
        ASSERT_GE(static_cast<long>(cs.c.size()), ld.p);
        for (long t = 0; t < ld.p; ++t) EXPECT_EQ(cs.c[t], refc.c[t]);
        if (i == B.stem.front() || T.nocs[B.stem.front()][i] > B.level) {
          EXPECT_EQ(ld.pstar, refd.pstar);
          EXPECT_EQ(ld.Dstar, refd.Dstar);
          EXPECT_TRUE((ld.E0 - refd.E0).is_zero());
        }
      }
    }
  }
}

TEST(ContactSuite, LinearPairs) {
  NewtonOptions opt;
  opt.field = Field::make();
  Branch b1 = puiseux_roots(ypoly({{1, one()}, {0, -xpow(1)}}), Rat(4), opt)[0];
  Branch b2 = puiseux_roots(ypoly({{1, one()}, {0, xpow(1)}}), Rat(4), opt)[0];
  Branch b3 =
      puiseux_roots(ypoly({{1, one()}, {0, -xpow(1) - xpow(2)}}), Rat(4), opt)[0];

  EXPECT_EQ(noc(b1, b2), ExtRat(Rat(1)));
  EXPECT_EQ(noc(b1, b3), ExtRat(Rat(2)));
  EXPECT_EQ(noc(b2, b3), ExtRat(Rat(1)));
  EXPECT_EQ(contact(b1, b3), ExtRat(Rat(2)));
  EXPECT_TRUE(noc(b1, b1).is_pos_inf());
  EXPECT_TRUE(verify_contact_triangle(b1, b2, b3));
  EXPECT_TRUE(verify_contact_triangle(b3, b1, b2));
  EXPECT_TRUE(verify_contact_triangle(b1, b1, b3));

  // same class, distinct branches
  Factorization pm = factor(ypoly({{2, one()}, {0, -xpow(2)}}), opt);
  ASSERT_EQ(pm.factors.size(), 2u);
  EXPECT_EQ(noc(pm.factors[0].first, pm.factors[1].first), ExtRat(Rat(1)));
}

TEST(ContactSuite, EqualityCertification) {
  NewtonOptions opt;
  opt.field = Field::make();
  // same branch reached through two factorization runs: truncated roots
  // agree to every budget, so equality must be certified, not assumed
  Branch u = puiseux_roots(biquartic(1, 0), Rat(3), opt)[0];
  Branch v = puiseux_roots(biquartic(1, 0), Rat(3), opt)[0];
  EXPECT_TRUE(noc(u, v).is_pos_inf());
  EXPECT_TRUE(contact(u, v).is_pos_inf());

  // shared factor found through the gcd of the two parents
  MPoly lin = ypoly({{1, one()}, {0, -xpow(1)}});
  Factorization fq = factor(quartic(), opt);
  Factorization fql = factor(quartic() * lin, opt);
  ASSERT_EQ(fql.factors.size(), 2u);
  const Branch& q1 = fq.factors[0].first;
  const Branch& l2 = fql.factors[0].first;
  const Branch& q2 = fql.factors[1].first;
  ASSERT_EQ(q2.n, 4);
  EXPECT_TRUE(noc(q1, q2).is_pos_inf());
  EXPECT_EQ(noc(q1, l2), ExtRat(Rat(1)));
  EXPECT_EQ(contact(q1, l2), ExtRat(Rat(4)));
  EXPECT_EQ(contact(l2, q1), ExtRat(Rat(1)));
  EXPECT_TRUE(verify_contact_triangle(q1, q2, l2));
}

TEST(ContactSuite, TreeQuartic) {
  Factorization fac = factor(quartic());
  std::vector<Rat> cs = contact_set(fac);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0], rat(5, 4));

  ContactTree T = tree_of(quartic());
  ASSERT_EQ(T.branches.size(), 1u);
  ASSERT_EQ(T.buds.size(), 2u);
  ASSERT_EQ(T.levels.size(), 2u);
  EXPECT_TRUE(T.levels[0].is_neg_inf());
  EXPECT_EQ(T.levels[1], ExtRat(rat(5, 4)));
  EXPECT_EQ(T.buds[1].parent, 0);
  EXPECT_EQ(T.buds[1].data->D, 1);
  EXPECT_EQ(T.buds[1].data->Dstar, 4);
  EXPECT_EQ(T.buds[1].data->S, rat(5, 4));

  EXPECT_EQ(roof(T, 0), std::vector<size_t>{1});
  EXPECT_TRUE(roof(T, 1).empty());
  EXPECT_EQ(preroof(T, 0), std::vector<size_t>{1});

  EXPECT_EQ(d_prime(T, 0), 0);
  EXPECT_EQ(d_prime(T, 1), 3);
  EXPECT_EQ(d_double_prime(T, 0), 3);
  EXPECT_EQ(d_double_prime(T, 1), 3);

  std::vector<StrictFriend> fr = strict_friends(T, 1);
  ASSERT_EQ(fr.size(), 1u);
  EXPECT_EQ(fr[0].Dstar, 4);
  EXPECT_TRUE((fr[0].E0 + Num(1)).is_zero());  // z[5]^4 = -1

  expect_tree_invariants(T);
}

TEST(ContactSuite, TreeBiquartic) {
  ContactTree T = tree_of(biquartic(1, 0));
  ASSERT_EQ(T.branches.size(), 1u);
  ASSERT_EQ(T.buds.size(), 3u);
  EXPECT_EQ(T.levels[1], ExtRat(rat(3, 2)));
  EXPECT_EQ(T.levels[2], ExtRat(rat(7, 4)));
  EXPECT_EQ(T.buds[1].parent, 0);
  EXPECT_EQ(T.buds[2].parent, 1);
  EXPECT_EQ(T.buds[1].data->D, 1);
  EXPECT_EQ(T.buds[2].data->D, 2);

  EXPECT_EQ(d_prime(T, 1), 1);
  EXPECT_EQ(d_prime(T, 2), 2);
  EXPECT_EQ(d_double_prime(T, 0), 3);
  EXPECT_EQ(d_double_prime(T, 1), 3);
  EXPECT_EQ(d_double_prime(T, 2), 2);

  std::vector<StrictFriend> fr1 = strict_friends(T, 1);
  ASSERT_EQ(fr1.size(), 1u);
  EXPECT_EQ(fr1[0].Dstar, 2);
  EXPECT_TRUE((fr1[0].E0 - Num(1)).is_zero());  // z[6]^2 = 1

  std::vector<StrictFriend> fr2 = strict_friends(T, 2);
  ASSERT_EQ(fr2.size(), 1u);
  EXPECT_EQ(fr2[0].Dstar, 4);
  // E0 = z[7]^2 follows the representative's conjugate
  Num z7 = T.branches[0].root.coeff_at(Rat(7));
  EXPECT_TRUE((fr2[0].E0 - z7 * z7).is_zero());
  EXPECT_TRUE((fr2[0].E0 * fr2[0].E0 - Num(rat(1, 16))).is_zero());

  expect_tree_invariants(T);
}

TEST(ContactSuite, TreeQuintic) {
  {
    Factorization fac = factor(quintic());
    std::vector<Rat> cs = contact_set(fac);
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0], rat(-1, 2));
    EXPECT_EQ(cs[1], rat(1, 3));
  }

  ContactTree T = tree_of(quintic());
  ASSERT_EQ(T.branches.size(), 2u);
  const Branch& fp = T.branches[0];  // degree 2
  const Branch& f = T.branches[1];   // degree 3
  ASSERT_EQ(fp.n, 2);
  ASSERT_EQ(f.n, 3);

  EXPECT_EQ(noc(f, fp), ExtRat(rat(-1, 2)));
  EXPECT_EQ(contact(f, fp), ExtRat(rat(-3, 2)));
  ASSERT_EQ(T.buds.size(), 4u);
  EXPECT_EQ(T.buds[1].stem, (std::vector<size_t>{0, 1}));
  EXPECT_EQ(level_of(T, 1), rat(-1, 2));
  EXPECT_EQ(T.buds[2].stem, std::vector<size_t>{0});
  EXPECT_EQ(T.buds[3].stem, std::vector<size_t>{1});
  EXPECT_EQ(level_of(T, 2), rat(1, 3));
  EXPECT_EQ(level_of(T, 3), rat(1, 3));

  EXPECT_EQ(d_prime(T, 0), 0);
  EXPECT_EQ(d_prime(T, 1), 2);
  EXPECT_EQ(d_prime(T, 2), 0);  // the degree-2 factor's leaf
  EXPECT_EQ(d_prime(T, 3), 2);  // the degree-3 factor's leaf
  EXPECT_EQ(d_double_prime(T, 0), 4);
  EXPECT_EQ(d_double_prime(T, 1), 4);
  EXPECT_EQ(d_double_prime(T, 2), 0);
  EXPECT_EQ(d_double_prime(T, 3), 2);

  // membership and departure levels
  EXPECT_TRUE(in_flower(T, 1, fp));
  EXPECT_FALSE(in_strict_flower(T, 1, fp));
  EXPECT_FALSE(in_flower(T, 3, fp));
  EXPECT_EQ(stem_noc(T, 3, fp), ExtRat(rat(-1, 2)));
  EXPECT_EQ(bud_noc(T, 3, fp), rat(-1, 2));
  EXPECT_EQ(bud_noc(T, 3, f), rat(1, 3));
  EXPECT_EQ(bud_noc(T, 2, fp), rat(1, 3));
  EXPECT_THROW(bud_noc(T, 0, f), Error);

  EXPECT_TRUE(verify_contact_intersection(f, fp));
  EXPECT_TRUE(verify_contact_intersection(fp, f));

  expect_tree_invariants(T);
}

TEST(ContactSuite, TreeQuinticDropped) {
  ContactTree T = tree_of(quintic_dropped());
  ASSERT_EQ(T.branches.size(), 3u);
  ASSERT_EQ(T.branches[0].n, 1);

  // identify the degree-2 branches by root order
  size_t ia = 0, ib = 0;
  for (size_t i = 1; i < 3; ++i)
    (T.branches[i].root.ord_x() == ExtRat(Rat(-1)) ? ia : ib) = i;
  ASSERT_NE(ia, ib);

  EXPECT_EQ(T.nocs[0][ia], ExtRat(rat(-1, 2)));
  EXPECT_EQ(T.nocs[0][ib], ExtRat(rat(1, 2)));
  EXPECT_EQ(T.nocs[ia][ib], ExtRat(rat(-1, 2)));

  ASSERT_EQ(T.levels.size(), 3u);
  EXPECT_EQ(T.levels[1], ExtRat(rat(-1, 2)));
  EXPECT_EQ(T.levels[2], ExtRat(rat(1, 2)));

  ASSERT_EQ(T.buds.size(), 4u);
  EXPECT_EQ(T.buds[1].stem, (std::vector<size_t>{0, 1, 2}));
  // at 1/2 the Y branch stays with the tame degree-2 branch
  EXPECT_EQ(T.buds[2].stem, (std::vector<size_t>{0, ib}));
  EXPECT_EQ(T.buds[3].stem, (std::vector<size_t>{ia}));

  EXPECT_EQ(d_prime(T, 1), 2);
  EXPECT_EQ(d_prime(T, 2), 2);
  EXPECT_EQ(d_prime(T, 3), 0);
  EXPECT_EQ(d_double_prime(T, 1), 4);
  EXPECT_EQ(d_double_prime(T, 2), 2);
  EXPECT_EQ(d_double_prime(T, 3), 0);

  expect_tree_invariants(T);
}

TEST(ContactSuite, BudSamples) {
  ContactTree T = tree_of(quintic());
  const Branch& fp = T.branches[0];
  const Branch f = refine(T.branches[1], Rat(8));

  // a stem member deforms to the predicted order and degree at its bud
  const Bud& Bf = T.buds[3];
  ASSERT_FALSE(Bf.data->edge_samples.empty());
  for (const EdgeSample& s : Bf.data->edge_samples)
    EXPECT_TRUE(verify_edge_deformation(f, rat(1, 3), s));

  // a branch outside the flower deforms to a constant initial coefficient
  // whose order is set by its own strength at the departure level
  const EdgeSample& s = Bf.data->edge_samples.front();
  EXPECT_EQ(s.V, 3);
  EXPECT_EQ(s.W, 1);
  Branch fpr = refine(fp, Rat(8));
  MPoly comp = compose_deformation(branch_poly(fpr), s.z,
                                   EdgeTriple{s.U, s.V, s.W});
  EXPECT_EQ(ord_x(comp), ExtRat(Rat(-3)));  // S(fp, -1/2) * 2 * 3
  EXPECT_EQ(inco_x(comp).deg(), 0);
}

TEST(ContactSuite, TruncationContact) {
  NewtonOptions opt;
  opt.field = Field::make();
  Branch b = puiseux_roots(biquartic(1, 0), Rat(4), opt)[0];

  LambdaData ld = lambda_data(b, rat(7, 4));
  Branch tb = puiseux_roots(ld.t, Rat(4), opt)[0];
  EXPECT_EQ(noc(b, tb), ExtRat(rat(7, 4)));

  Branch tsb = puiseux_roots(ld.tstar, Rat(4), opt)[0];
  EXPECT_TRUE(noc(b, tsb) > ExtRat(rat(7, 4)));

  LambdaData l1 = lambda_data(b, rat(3, 2));
  Branch t1 = puiseux_roots(l1.t, Rat(4), opt)[0];
  EXPECT_EQ(l1.t.coeffs().size(), 1u);  // t = Y
  EXPECT_EQ(noc(b, t1), ExtRat(rat(3, 2)));
}

TEST(ContactSuite, ProductTrees) {
  MPoly lin = ypoly({{1, one()}, {0, -xpow(1)}});
  ContactTree T = tree_of_product(quartic(), lin);
  ASSERT_EQ(T.branches.size(), 2u);
  ASSERT_EQ(T.levels.size(), 3u);
  EXPECT_EQ(T.levels[1], ExtRat(Rat(1)));
  EXPECT_EQ(T.levels[2], ExtRat(rat(5, 4)));
  ASSERT_EQ(T.buds.size(), 4u);
  EXPECT_EQ(T.buds[1].stem, (std::vector<size_t>{0, 1}));
  EXPECT_EQ(T.buds[2].stem, std::vector<size_t>{0});  // the line
  EXPECT_EQ(T.buds[3].stem, std::vector<size_t>{1});  // the quartic branch

  EXPECT_EQ(d_prime(T, 1), 1);
  EXPECT_EQ(d_prime(T, 2), 0);
  EXPECT_EQ(d_prime(T, 3), 3);
  EXPECT_EQ(d_double_prime(T, 0), 4);
  expect_tree_invariants(T);

  // a square collapses to the same tree as its base
  ContactTree S = tree_of_product(quartic(), quartic());
  ASSERT_EQ(S.branches.size(), 1u);
  ASSERT_EQ(S.buds.size(), 2u);
  EXPECT_EQ(d_prime(S, 1), 3);

  ContactTree Q = tree_of_product(quintic(), MPoly::y());
  expect_tree_invariants(Q);
}

TEST(ContactSuite, DegenerateTrees) {
  // no stems: the tree of the single branch Y
  ContactTree T = build_tree({}, {Rat(1)});
  ASSERT_EQ(T.branches.size(), 1u);
  EXPECT_EQ(T.branches[0].n, 1);
  ASSERT_EQ(T.buds.size(), 2u);
  EXPECT_EQ(d_prime(T, 0), 0);
  EXPECT_EQ(d_prime(T, 1), 0);
  EXPECT_EQ(d_double_prime(T, 0), 0);

  ContactTree R = build_tree({}, {});
  ASSERT_EQ(R.buds.size(), 1u);
  EXPECT_EQ(d_double_prime(R, 0), 0);

  EXPECT_THROW(tree_of(MPoly::constant(xpow(3))), ConstantInput);
  EXPECT_THROW(tree_of(MPoly()), ZeroPolynomial);
}

TEST(ContactSuite, MismatchedInputs) {
  Branch loose;
  loose.n = 1;
  loose.root = Series::constant(Num(0));
  loose.field = Field::make();
  Branch ok = puiseux_roots(MPoly::y(), Rat(1))[0];
  EXPECT_THROW(noc(loose, ok), Error);

  // separate factorization runs without a shared tower are rejected
  Branch a = puiseux_roots(quartic(), Rat(2))[0];
  Branch b = puiseux_roots(MPoly::y(), Rat(1))[0];
  EXPECT_THROW(noc(a, b), Error);
}

TEST(ContactSuite, GnpIntersection) {
  NewtonOptions opt;
  opt.field = Field::make();
  Branch f = puiseux_roots(quartic(), Rat(2), opt)[0];
  Branch y = puiseux_roots(MPoly::y(), Rat(1), opt)[0];
  EXPECT_EQ(noc(f, y), ExtRat(rat(5, 4)));
  EXPECT_TRUE(verify_contact_intersection(f, y));
  EXPECT_TRUE(verify_contact_intersection(y, f));
  EXPECT_TRUE(verify_contact_intersection(f, f));

  Branch l = puiseux_roots(ypoly({{1, one()}, {0, -xpow(1)}}), Rat(4), opt)[0];
  EXPECT_TRUE(verify_contact_intersection(f, l));
  EXPECT_TRUE(verify_contact_intersection(l, f));
}

}  // namespace
}  // namespace merocurve
