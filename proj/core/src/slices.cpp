#include "merocurve/slices.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "merocurve/errors.hpp"

namespace merocurve {

namespace {

constexpr int kRounds = 60;

Rat bumped(const ExtRat& prec) {
  const Rat p = prec.is_pos_inf() ? Rat(0) : prec.value();
  return std::max(Rat(p * 2), Rat(p + 4));
}

const LambdaData& bud_data(const ContactTree& T, size_t bud) {
  const Bud& B = T.buds.at(bud);
  if (!B.data) throw Error("improper bud carries no level data");
  return *B.data;
}

// Initial coefficient of the deformed factor of b along (z, V, W), refining
// the branch until the order is decided.
KPoly branch_minco(Branch b, const Series& z, long V, long W) {
  const EdgeTriple tr{V, V, W};
  for (int round = 0; round < kRounds; ++round) {
    try {
      return inco_x(compose_deformation(branch_poly(b), z, tr));
    } catch (const PrecisionExhausted&) {
      b = refine(b, bumped(b.prec()));
    }
  }
  throw PrecisionCapExceeded("slice coefficient stayed undecided");
}

// Product of the stem members' deformed initial coefficients; its roots are
// the root values the stem occupies on the edge.
KPoly stem_theta(const std::vector<Branch>& stem, const Series& z, long V,
                 long W) {
  KPoly prod = KPoly::constant(Num(1));
  for (const auto& f : stem) prod = prod * branch_minco(f, z, V, W);
  return prod;
}

// Splits monic M into the part coprime to P and the part supported on P's
// roots, multiplicities intact.
std::pair<KPoly, KPoly> split_by_roots(const KPoly& M, const KPoly& P) {
  KPoly keep = M;
  KPoly killed = KPoly::constant(Num(1));
  while (true) {
    KPoly g = kpoly_gcd_monic(keep, P);
    if (g.deg() <= 0) break;
    killed = killed * g;
    keep = divrem_monic(keep, g).first;
  }
  return {keep, killed};
}

std::pair<KPoly, KPoly> split_minco(const MPoly& H,
                                    const std::vector<Branch>& stem,
                                    const Series& z, long V, long W) {
  const KPoly one = KPoly::constant(Num(1));
  if (H.is_exact_zero()) return {one, one};
  KPoly M = minco(H, z, V, W).monic();
  if (M.deg() <= 0) return {one, one};
  return split_by_roots(M, stem_theta(stem, z, V, W));
}

std::vector<std::vector<ExtRat>> noc_rows(const Factorization& H,
                                          const ContactTree& T) {
  std::vector<std::vector<ExtRat>> rows;
  rows.reserve(H.factors.size());
  for (const auto& fm : H.factors) {
    std::vector<ExtRat> row;
    row.reserve(T.branches.size());
    for (const auto& tb : T.branches) row.push_back(noc(fm.first, tb));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool sorted_contains(const std::vector<size_t>& v, size_t j) {
  return std::binary_search(v.begin(), v.end(), j);
}

// True when the set reaches lvl on every listed branch; strict_out reports
// whether it exceeds lvl somewhere (everywhere-true for the infinite level).
bool reaches(const std::vector<ExtRat>& row, const std::vector<size_t>& members,
             const ExtRat& lvl, bool* strict_out) {
  bool strict = !lvl.is_finite();
  for (size_t i : members) {
    if (!(row[i] >= lvl)) return false;
    if (row[i] > lvl) strict = true;
  }
  if (strict_out) *strict_out = strict;
  return true;
}

// Strict-slice invariants over one class of branches at one level.
DoublyStrict star_invariants(const Factorization& H,
                             const std::vector<std::vector<ExtRat>>& rows,
                             const std::vector<size_t>& members,
                             const Rat& lam, long Dstar) {
  DoublyStrict out;
  out.A = Num(1);
  long deg = 0;
  for (size_t j = 0; j < H.factors.size(); ++j) {
    bool strict = false;
    if (!reaches(rows[j], members, ExtRat(lam), &strict) || !strict) continue;
    const auto& fm = H.factors[j];
    const Num a = lambda_data(fm.first, lam).Ahat;
    for (long k = 0; k < fm.second; ++k) out.A = out.A * a;
    deg += fm.second * fm.first.n;
  }
  if (deg % Dstar != 0)
    throw Error("strict degree does not divide the strict slice");
  out.D = deg / Dstar;
  return out;
}

// Intersection order of two distinct branches: ord_X of one factor
// evaluated at the other's parametrization.
Rat int_pair(Branch a, Branch b) {
  for (int round = 0; round < kRounds; ++round) {
    Series v = eval_root(branch_poly(b), a.n, a.root);
    if (v.has_terms()) return Rat(v.ord_x().value());
    a = refine(a, bumped(a.prec()));
    b = refine(b, bumped(b.prec()));
  }
  throw PrecisionCapExceeded("intersection order stayed undecided");
}

std::vector<size_t> all_indices(const Factorization& H) {
  std::vector<size_t> v(H.factors.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Sorts a union of slices and compares against a sorted target; duplicates
// in the union make the lengths differ, so disjointness is checked too.
bool sorted_equal(std::vector<size_t> u, const std::vector<size_t>& want) {
  std::sort(u.begin(), u.end());
  return u == want;
}

FactorizationReport make_report(ContactTree&& tree, Factorization&& facH,
                                const std::optional<Factorization>& facG,
                                bool need_strength) {
  FactorizationReport rep;
  rep.tree = std::move(tree);
  rep.slices = assign_slices(facH, rep.tree);
  std::optional<SliceAssignment> saG;
  if (facG) saG = assign_slices(*facG, rep.tree);

  const SliceAssignment& sa = rep.slices;
  const Factorization& H = sa.H;
  bool all = true;
  for (size_t b = 0; b < rep.tree.buds.size(); ++b) {
    const Bud& B = rep.tree.buds[b];
    BudReport row;
    row.bud = b;
    if (facG) {
      row.predicted = saG->omega[b].empty();
      if (row.predicted && need_strength)
        row.predicted = strength(*facG, rep.tree, b) != 0;
    }
    row.primitive = sa.omega_prime[b];
    row.slice = slice_poly(H, row.primitive);
    row.deg_prime = slice_deg(H, row.primitive);
    row.deg_omega = slice_deg(H, sa.omega[b]);
    row.want_prime = d_prime(rep.tree, b);
    row.want_omega = d_double_prime(rep.tree, b);
    row.degree_match =
        row.deg_prime == row.want_prime && row.deg_omega == row.want_omega;

    std::vector<size_t> u = row.primitive;
    for (size_t c : preroof(rep.tree, b))
      u.insert(u.end(), sa.omega_prime[c].begin(), sa.omega_prime[c].end());
    row.roof_match = sorted_equal(std::move(u), sa.omega[b]);

    row.int_match = true;
    if (B.level.is_finite() && row.predicted) {
      const Rat S = bud_data(rep.tree, b).S;
      for (size_t i : B.stem) {
        bool finite = true;
        for (size_t j : row.primitive)
          finite = finite && !sa.noc_table[j][i].is_pos_inf();
        if (!finite) {
          row.int_match = false;
          break;
        }
        Rat total(0);
        for (size_t j : row.primitive)
          total += Rat(H.factors[j].second) *
                   int_pair(rep.tree.branches[i], H.factors[j].first);
        row.ints.push_back(total);
        row.want_ints.push_back(
            Rat(Rat(rep.tree.branches[i].n) * S * Rat(row.deg_prime)));
      }
      row.int_match = row.int_match && row.ints == row.want_ints;
    }

    if (row.predicted)
      all = all && row.degree_match && row.roof_match && row.int_match;
    rep.buds.push_back(std::move(row));
  }

  std::vector<size_t> primitive_union;
  for (const auto& v : sa.omega_prime)
    primitive_union.insert(primitive_union.end(), v.begin(), v.end());
  rep.split_match = sorted_equal(std::move(primitive_union), all_indices(H));
  rep.all_match = all;
  return rep;
}

Factorization factor_squarefree(const MPoly& F, const NewtonOptions& o) {
  Factorization facF = factor(F, o);
  if (facF.chi == 0) throw ConstantInput("input has no monic factors");
  for (const auto& fm : facF.factors)
    if (fm.second > 1) throw MultipleFactors("input has a repeated factor");
  return facF;
}

void emit(std::vector<LemmaCheck>& out, std::string name, size_t bud,
          bool applicable, bool ok, std::string note = {}) {
  out.push_back(
      {std::move(name), bud, applicable, !applicable || ok, std::move(note)});
}

bool kpoly_equal(const KPoly& a, const KPoly& b) { return (a - b).is_zero(); }

// Equal up to a nonzero scalar of the ground field.
bool kpoly_proportional(const KPoly& a, const KPoly& b) {
  if (a.deg() != b.deg() || a.is_zero() != b.is_zero()) return false;
  if (a.is_zero()) return true;
  return kpoly_equal(b[b.deg()] * a, a[a.deg()] * b);
}

// The degree and edge-coefficient transfer between two slice assignments at
// one bud: equal slice degrees, proportional minco, equal pinco and sinco.
bool transfer_ok(const MPoly& Hnew, const MPoly& Hold,
                 const SliceAssignment& saNew, const SliceAssignment& saOld,
                 const ContactTree& T, size_t b, std::string* why) {
  for (int part = 0; part < 3; ++part) {
    const auto& vn = part == 0   ? saNew.omega[b]
                     : part == 1 ? saNew.omega_prime[b]
                                 : saNew.omega_star[b];
    const auto& vo = part == 0   ? saOld.omega[b]
                     : part == 1 ? saOld.omega_prime[b]
                                 : saOld.omega_star[b];
    if (slice_deg(saNew.H, vn) != slice_deg(saOld.H, vo)) {
      *why = "slice degree transfer failed";
      return false;
    }
  }
  const BudEdge e = bud_edge(T, b);
  std::vector<Branch> stem;
  for (size_t i : T.buds[b].stem) stem.push_back(T.branches[i]);
  if (!kpoly_proportional(minco(Hnew, e.z, e.V, e.W),
                          minco(Hold, e.z, e.V, e.W))) {
    *why = "minco transfer failed";
    return false;
  }
  if (!kpoly_equal(pinco(Hnew, stem, e.z, e.V, e.W),
                   pinco(Hold, stem, e.z, e.V, e.W))) {
    *why = "pinco transfer failed";
    return false;
  }
  if (!kpoly_equal(sinco(Hnew, stem, e.z, e.V, e.W),
                   sinco(Hold, stem, e.z, e.V, e.W))) {
    *why = "sinco transfer failed";
    return false;
  }
  return true;
}

}  // namespace

BudEdge bud_edge(const ContactTree& T, size_t bud) {
  const LambdaData& ld = bud_data(T, bud);
  if (ld.edge_samples.empty()) throw Error("bud carries no edge samples");
  const EdgeSample& s = ld.edge_samples.front();
  return BudEdge{trunc_dagger(s.z, EdgeTriple{s.U, s.V, s.W}), s.V, s.W};
}

KPoly minco(const MPoly& H, const Series& z, long V, long W) {
  if (H.is_exact_zero()) return KPoly();
  return inco_x(compose_deformation(H, z, EdgeTriple{V, V, W}));
}

KPoly sinco(const MPoly& H, const std::vector<Branch>& stem, const Series& z,
            long V, long W) {
  return split_minco(H, stem, z, V, W).second;
}

KPoly pinco(const MPoly& H, const std::vector<Branch>& stem, const Series& z,
            long V, long W) {
  return split_minco(H, stem, z, V, W).first;
}

SliceAssignment assign_slices(const Factorization& H, const ContactTree& T) {
  SliceAssignment sa;
  sa.H = H;
  sa.noc_table = noc_rows(H, T);
  const size_t nb = T.buds.size();
  sa.omega.resize(nb);
  sa.omega_prime.resize(nb);
  sa.omega_star.resize(nb);
  sa.omega_tb.resize(nb);
  sa.omega_star_tb.resize(nb);
  sa.omega_star_pair.resize(nb);

  for (size_t b = 0; b < nb; ++b) {
    const auto& stem = T.buds[b].stem;
    const ExtRat& lvl = T.buds[b].level;
    for (size_t j = 0; j < sa.noc_table.size(); ++j) {
      const auto& row = sa.noc_table[j];
      if (!reaches(row, stem, lvl, nullptr)) continue;
      sa.omega[b].push_back(j);
      bool prime = lvl.is_finite();
      for (size_t i : stem) prime = prime && row[i] == lvl;
      if (prime)
        sa.omega_prime[b].push_back(j);
      else
        sa.omega_star[b].push_back(j);
    }
  }

  // Same-level stems are disjoint, so the children's omegas are too.
  for (size_t b = 0; b < nb; ++b) {
    std::set<size_t> above;
    for (size_t c : roof(T, b))
      above.insert(sa.omega[c].begin(), sa.omega[c].end());
    for (size_t j : sa.omega[b])
      if (!above.count(j)) sa.omega_tb[b].push_back(j);
    for (size_t j : sa.omega_star[b])
      if (!above.count(j)) sa.omega_star_tb[b].push_back(j);
  }

  // Relative strict slices, indexed by the child bud: over the child's stem
  // the factor must reach the parent level with strict excess somewhere, and
  // not already lie in the child's omega.
  for (size_t b = 0; b < nb; ++b) {
    const long par = T.buds[b].parent;
    if (par < 0) continue;
    const ExtRat& plvl = T.buds[par].level;
    const auto& stem = T.buds[b].stem;
    for (size_t j = 0; j < sa.noc_table.size(); ++j) {
      bool strict = false;
      if (!reaches(sa.noc_table[j], stem, plvl, &strict) || !strict) continue;
      if (!sorted_contains(sa.omega[b], j)) sa.omega_star_pair[b].push_back(j);
    }
  }
  return sa;
}

MPoly slice_poly(const Factorization& H, const std::vector<size_t>& idx) {
  MPoly out = MPoly::constant(Series::constant(Num(1)));
  for (size_t j : idx) {
    const auto& fm = H.factors.at(j);
    const MPoly p = branch_poly(fm.first);
    for (long k = 0; k < fm.second; ++k) out = out * p;
  }
  return out;
}

long slice_deg(const Factorization& H, const std::vector<size_t>& idx) {
  long d = 0;
  for (size_t j : idx) d += H.factors.at(j).second * H.factors.at(j).first.n;
  return d;
}

bool verify_slice_partitions(const SliceAssignment& sa, const ContactTree& T) {
  for (size_t b = 0; b < T.buds.size(); ++b) {
    std::vector<size_t> u = sa.omega_tb[b];
    for (size_t c : roof(T, b))
      u.insert(u.end(), sa.omega[c].begin(), sa.omega[c].end());
    if (!sorted_equal(std::move(u), sa.omega[b])) return false;

    std::vector<size_t> v = sa.omega_prime[b];
    v.insert(v.end(), sa.omega_star_tb[b].begin(), sa.omega_star_tb[b].end());
    if (!sorted_equal(std::move(v), sa.omega_tb[b])) return false;

    std::vector<size_t> w;
    for (size_t c : roof(T, b))
      w.insert(w.end(), sa.omega_star_pair[c].begin(),
               sa.omega_star_pair[c].end());
    if (!sorted_equal(std::move(w), sa.omega_star_tb[b])) return false;
  }
  std::vector<size_t> all;
  for (const auto& v : sa.omega_tb) all.insert(all.end(), v.begin(), v.end());
  return sorted_equal(std::move(all), all_indices(sa.H));
}

Rat strength(const Factorization& H, const ContactTree& T, size_t bud) {
  if (H.content.is_exact_zero())
    throw ZeroArgument("zero polynomial has unbounded strength");
  Rat total = Rat(H.content.ord_x().value());
  const Bud& B = T.buds.at(bud);
  if (!B.level.is_finite()) {
    // A monic factor's order is the negative root orders summed, zero when
    // the roots stay integral.
    for (const auto& fm : H.factors) {
      Branch b = fm.first;
      if (b.root.is_exact_zero()) continue;
      for (int round = 0; round < kRounds && !b.root.has_terms(); ++round)
        b = refine(b, bumped(b.prec()));
      if (!b.root.has_terms())
        throw PrecisionCapExceeded("root order stayed undecided");
      const Rat m1 = Rat(b.root.ord_x().value());
      if (m1 < 0) total += Rat(fm.second) * m1;
    }
    return total;
  }
  for (const auto& fm : H.factors) {
    const Rat lam = bud_noc(T, bud, fm.first);
    total += Rat(fm.second) * Rat(fm.first.n) * lambda_data(fm.first, lam).S;
  }
  return total;
}

bool verify_strength(const MPoly& Hpoly, const Factorization& H,
                     const ContactTree& T, size_t bud) {
  const Rat s = strength(H, T, bud);
  if (!T.buds.at(bud).level.is_finite()) return ord_x(Hpoly) == ExtRat(s);
  const BudEdge e = bud_edge(T, bud);
  const MPoly comp = compose_deformation(Hpoly, e.z, EdgeTriple{e.V, e.V, e.W});
  return ord_x(comp) == ExtRat(Rat(s * Rat(e.V)));
}

DoublyStrict doubly_strict(const Factorization& H, const ContactTree& T,
                           size_t bud) {
  const Bud& B = T.buds.at(bud);
  if (!B.level.is_finite()) throw Error("strict data needs a proper bud");
  for (size_t i : B.stem)
    for (size_t j : B.stem)
      if (i != j && !(T.nocs[i][j] > B.level))
        throw Error("strict data needs a pairwise strict stem");
  return star_invariants(H, noc_rows(H, T), B.stem, B.level.value(),
                         bud_data(T, bud).Dstar);
}

DoublyStrict doubly_strict_at(const Factorization& H, const ContactTree& T,
                              size_t bud, const StrictFriend& fr) {
  const Bud& B = T.buds.at(bud);
  if (!B.level.is_finite()) throw Error("strict data needs a proper bud");
  return star_invariants(H, noc_rows(H, T), fr.members, B.level.value(),
                         fr.Dstar);
}

FactorizationReport derivative_factorization(const MPoly& F,
                                             const NewtonOptions& opt) {
  NewtonOptions o = opt;
  if (!o.field) o.field = Field::make();
  Factorization facF = factor_squarefree(F, o);
  ContactTree T = tree_over(facF);
  Factorization facH = factor(partial_y(F), o);
  return make_report(std::move(T), std::move(facH), std::nullopt, false);
}

FactorizationReport jacobian_factorization(const MPoly& F, const MPoly& G,
                                           bool product_rule,
                                           const NewtonOptions& opt) {
  if (G.is_exact_zero()) throw ZeroG("jacobian needs a nonzero second input");
  NewtonOptions o = opt;
  if (!o.field) o.field = Field::make();
  factor_squarefree(F, o);
  Factorization facG = factor(G, o);
  ContactTree T = tree_over(factor(F * G, o));
  MPoly Hpoly = product_rule ? partial_y(F * G) : jacobian(F, G);
  Factorization facH = factor(Hpoly, o);
  return make_report(std::move(T), std::move(facH), facG, !product_rule);
}

std::vector<LemmaCheck> verify_sp_lemmas(const MPoly& F, const MPoly& G,
                                         const ContactTree& T) {
  if (T.branches.empty()) throw Error("lemma checks need a populated tree");
  NewtonOptions o;
  o.field = T.branches.front().field;
  std::vector<LemmaCheck> out;

  Factorization facF = factor(F, o);
  bool squarefree = facF.chi > 0;
  for (const auto& fm : facF.factors) squarefree = squarefree && fm.second == 1;
  const MPoly FY = partial_y(F);
  Factorization facFY = factor(FY, o);

  // The derivative laws live on the tree of F alone.
  ContactTree TF = tree_over(facF);
  const SliceAssignment fF = assign_slices(facF, TF);
  const SliceAssignment fFY = assign_slices(facFY, TF);

  for (size_t b = 0; b < TF.buds.size(); ++b) {
    const Bud& B = TF.buds[b];
    const bool proper = B.level.is_finite();
    const long dp = d_prime(TF, b);
    const long ddp = d_double_prime(TF, b);
    const long degF = slice_deg(facF, fF.omega[b]);
    const long degFY = slice_deg(facFY, fFY.omega[b]);
    const long degFYp = slice_deg(facFY, fFY.omega_prime[b]);
    const long degFYs = slice_deg(facFY, fFY.omega_star[b]);

    if (proper) {
      const long D = bud_data(TF, b).D;
      {
        // Every strict class of a tree stem holds one of F's own factors,
        // so the full-strict-slice hypothesis is automatic here.
        bool ok = degFY == -D + degF && degFYp == dp &&
                  degFYs == -D - dp + degF && dp % D == 0;
        std::string why = ok ? "" : "slice degree law failed";
        if (ok) {
          const BudEdge e = bud_edge(TF, b);
          std::vector<Branch> stem;
          for (size_t i : B.stem) stem.push_back(TF.branches[i]);
          const KPoly mF = minco(F, e.z, e.V, e.W);
          const KPoly mFY = minco(FY, e.z, e.V, e.W);
          const KPoly pFY = pinco(FY, stem, e.z, e.V, e.W);
          const KPoly sFY = sinco(FY, stem, e.z, e.V, e.W);
          ok = mFY.deg() == mF.deg() - 1 && pFY.deg() == dp / D &&
               sFY.deg() == mFY.deg() - dp / D;
          if (!ok) why = "edge coefficient degree law failed";
        }
        emit(out, "SP70", b, true, ok, why);
      }
      emit(out, "SP71", b, !fF.omega[b].empty(), degFY == -bud_data(TF, b).D + degF,
           fF.omega[b].empty() ? "slice of F is trivial" : "");

      // Strict-degree drop per strict class, then at pairwise strict buds.
      const auto friends = strict_friends(TF, b);
      for (size_t fi = 0; fi < friends.size(); ++fi) {
        DoublyStrict dsF = doubly_strict_at(facF, TF, b, friends[fi]);
        bool app = dsF.D > 0;
        bool ok = true;
        if (app)
          ok = doubly_strict_at(facFY, TF, b, friends[fi]).D == dsF.D - 1;
        std::ostringstream tag;
        tag << "class " << fi;
        emit(out, "SP72", b, app, ok, tag.str());
      }
      bool strict_stem = true;
      for (size_t i : B.stem)
        for (size_t j : B.stem)
          strict_stem = strict_stem && (i == j || TF.nocs[i][j] > B.level);
      if (strict_stem) {
        DoublyStrict dsF = doubly_strict(facF, TF, b);
        emit(out, "SP73", b, dsF.D > 0,
             dsF.D <= 0 || doubly_strict(facFY, TF, b).D == dsF.D - 1,
             dsF.D > 0 ? "" : "strict slice of F is trivial");
      } else {
        emit(out, "SP73", b, false, true, "stem is not pairwise strict");
      }
    }

    emit(out, "SP76", b, squarefree, degFY == ddp && degFYp == dp,
         squarefree ? "" : "input has repeated factors");

    {
      std::vector<size_t> u = fFY.omega_prime[b];
      long degsum = degFYp;
      for (size_t c : preroof(TF, b)) {
        u.insert(u.end(), fFY.omega_prime[c].begin(), fFY.omega_prime[c].end());
        degsum += slice_deg(facFY, fFY.omega_prime[c]);
      }
      const bool products = sorted_equal(std::move(u), fFY.omega[b]);
      const bool degrees = degsum == degFY;
      emit(out, "SP80", b, true, products == degrees,
           products == degrees ? "" : "product and degree criteria disagree");
    }
  }

  // The jacobian laws live on the given tree of FG.
  Factorization facG = factor(G, o);
  const MPoly J = jacobian(F, G);
  const MPoly PR = partial_y(F * G);
  Factorization facJ = factor(J, o);
  Factorization facPR = factor(PR, o);
  const SliceAssignment gT = assign_slices(facG, T);
  const SliceAssignment fT = assign_slices(facF, T);
  const SliceAssignment fyT = assign_slices(facFY, T);
  const SliceAssignment jT = assign_slices(facJ, T);
  const SliceAssignment prT = assign_slices(facPR, T);

  std::vector<std::optional<Rat>> SG(T.buds.size());
  for (size_t b = 0; b < T.buds.size(); ++b) SG[b] = strength(facG, T, b);

  for (size_t b = 0; b < T.buds.size(); ++b) {
    const Bud& B = T.buds[b];
    const bool proper = B.level.is_finite();
    const bool g_trivial = gT.omega[b].empty();
    const bool f_nontrivial = !fT.omega[b].empty();
    const bool g_strong = *SG[b] != 0;

    if (proper) {
      std::string why;
      bool app = f_nontrivial && g_trivial && g_strong;
      emit(out, "SP74", b, app,
           !app || transfer_ok(J, FY, jT, fyT, T, b, &why), why);
      app = f_nontrivial && g_trivial;
      why.clear();
      emit(out, "SP75", b, app,
           !app || transfer_ok(PR, FY, prT, fyT, T, b, &why), why);
    }

    // Hypothesis propagation plus the degree transfer up the tree.
    for (int variant = 0; variant < 2; ++variant) {
      const bool app = g_trivial && (variant == 1 || g_strong);
      const SliceAssignment& hT = variant == 0 ? jT : prT;
      bool ok = true;
      std::string why;
      if (app) {
        std::vector<size_t> above = preroof(T, b);
        above.push_back(b);
        for (size_t c : above) {
          if (gT.omega[c].empty() && !fT.omega[c].empty() && *SG[c] == *SG[b] &&
              slice_deg(hT.H, hT.omega[c]) ==
                  slice_deg(facFY, fyT.omega[c]) &&
              slice_deg(hT.H, hT.omega_prime[c]) ==
                  slice_deg(facFY, fyT.omega_prime[c]))
            continue;
          ok = false;
          std::ostringstream os;
          os << "propagation failed at bud " << c;
          why = os.str();
          break;
        }
      }
      emit(out, variant == 0 ? "SP77.1" : "SP77.2", b, app, ok, why);
    }
  }
  return out;
}

}  // namespace merocurve
