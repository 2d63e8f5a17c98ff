#include "merocurve/contact.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "merocurve/polygcd.hpp"

namespace merocurve {

namespace {

Rat lead_ord(const MPoly& g) { return deco_y(g).ord_x().value(); }

// Least possible order of a root difference across P and Q, on the X scale:
// every root order is at least the steepest downward polygon slope, and so
// is the order of any difference of two such roots.
Rat pair_floor(const MPoly& P, const MPoly& Q) {
  std::optional<Rat> mn;
  auto visit = [&](const MPoly& g) {
    for (const auto& face : newton_polygon(g).faces) {
      Rat o = Rat(-face.slope);
      if (!mn || o < *mn) mn = o;
    }
  };
  visit(P);
  visit(Q);
  return mn ? *mn : Rat(0);
}

// Bound, on the X scale, for the agreement order of two distinct roots taken
// from coprime P and Q: the resultant order is the sum of all pairwise
// agreement orders, and the floor bounds every other pair from below.
Rat res_pair_bound(const MPoly& P, const MPoly& Q) {
  const long p = deg_y(P);
  const long q = deg_y(Q);
  if (p < 1 || q < 1) return Rat(0);
  Series R = sylvester_resultant(P, Q);
  if (R.is_exact_zero()) throw Error("resultant vanished for coprime classes");
  Rat sum = Rat(R.ord_x().value()) - Rat(q) * lead_ord(P) - Rat(p) * lead_ord(Q);
  return Rat(sum - Rat(p * q - 1) * pair_floor(P, Q) + 2);
}

// Same for two distinct roots of one squarefree class, via the discriminant.
Rat disc_pair_bound(const MPoly& P) {
  const long p = deg_y(P);
  if (p < 2) return Rat(0);
  Series R = sylvester_resultant(P, partial_y(P));
  if (R.is_exact_zero()) throw NotSquarefree("class has repeated roots");
  Rat sum = (Rat(R.ord_x().value()) - Rat(2 * p - 1) * lead_ord(P)) / 2;
  return Rat(sum - Rat(p * (p - 1) / 2 - 1) * pair_floor(P, P) + 2);
}

Rat finite_pair_bound(const MPoly& P, const MPoly& Q, bool same) {
  if (same) return disc_pair_bound(P);
  Series R = sylvester_resultant(P, Q);
  if (!R.is_exact_zero()) return res_pair_bound(P, Q);
  MPoly w = gcd_y(P, Q);
  if (deg_y(w) < 1) throw Error("zero resultant without a common factor");
  MPoly P2 = divexact_y(P, w);
  MPoly Q2 = divexact_y(Q, w);
  Rat best = disc_pair_bound(w);
  if (deg_y(Q2) >= 1) best = std::max(best, res_pair_bound(w, Q2));
  if (deg_y(P2) >= 1) {
    best = std::max(best, res_pair_bound(P2, w));
    if (deg_y(Q2) >= 1) best = std::max(best, res_pair_bound(P2, Q2));
  }
  return best;
}

struct PairContacts {
  Branch a, b;
  // Order of a.root(X^{n_b}) - c(X^{n_a}) per conjugate c of b; nullopt
  // marks a certified zero difference (equal roots). Every conjugate pair's
  // order shows up in this row via a simultaneous twist, so its maximum is
  // the full contact.
  std::vector<std::optional<Rat>> row;
};

PairContacts pair_contacts(const Branch& f, const Branch& fp) {
  if (!f.origin || !fp.origin)
    throw Error("contact needs origin-backed branches");
  if (f.field != fp.field)
    throw Error("contact needs branches over one coefficient tower");
  Branch a = f;
  Branch b = fp;
  for (int pass = 0;; ++pass) {
    Series za = substitute_pow(a.root, b.n);
    std::vector<std::optional<Rat>> row;
    bool undecided = false;
    size_t zeros = 0;
    for (const Series& c : conjugates(b)) {
      Series diff = za - substitute_pow(c, a.n);
      if (diff.has_terms()) {
        row.emplace_back(Rat(diff.ord_x().value()));
      } else {
        row.emplace_back(std::nullopt);
        ++zeros;
        if (!diff.is_exact_zero()) undecided = true;
      }
    }
    if (!undecided) return {std::move(a), std::move(b), std::move(row)};
    if (pass == 1) {
      // distinct roots separate below the bound, so a difference that is
      // still invisible certifies equality
      if (a.n != b.n || zeros != 1) throw Error("contact separation failed");
      return {std::move(a), std::move(b), std::move(row)};
    }
    bool same =
        f.origin == fp.origin || (*f.origin - *fp.origin).is_exact_zero();
    // precision is an X-resolution, so resolving past the bound needs no
    // extra grid factor
    Rat bx = finite_pair_bound(*f.origin, *fp.origin, same);
    if (bx < Rat(1)) bx = Rat(1);
    a = refine(a, Rat(bx + 1));
    b = refine(b, Rat(bx + 1));
  }
}

// Maximal row entry; nullopt (infinite) as soon as some pair agrees fully.
std::optional<Rat> max_grid(const PairContacts& pc) {
  std::optional<Rat> mx;
  for (const auto& o : pc.row) {
    if (!o) return std::nullopt;
    if (!mx || *o > *mx) mx = *o;
  }
  return mx;
}

template <typename Rel>
std::vector<size_t> closure_classes(size_t m, Rel rel) {
  std::vector<size_t> cls(m);
  std::iota(cls.begin(), cls.end(), size_t{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j)
        if (cls[i] != cls[j] && rel(i, j)) {
          const size_t lo = std::min(cls[i], cls[j]);
          const size_t hi = std::max(cls[i], cls[j]);
          for (size_t t = 0; t < m; ++t)
            if (cls[t] == hi) cls[t] = lo;
          changed = true;
        }
  }
  return cls;
}

}  // namespace

ExtRat contact(const Branch& f, const Branch& fp) {
  auto mx = max_grid(pair_contacts(f, fp));
  if (!mx) return ExtRat::pos_inf();
  return ExtRat(Rat(*mx / Rat(fp.n)));
}

ExtRat noc(const Branch& f, const Branch& fp) {
  auto mx = max_grid(pair_contacts(f, fp));
  if (!mx) return ExtRat::pos_inf();
  return ExtRat(Rat(*mx / Rat(f.n * fp.n)));
}

Branch aligned_branch(const Branch& ref, const Branch& other) {
  PairContacts pc = pair_contacts(ref, other);
  const std::vector<Series> conj = conjugates(pc.b);
  std::optional<size_t> best;
  Rat bestv;
  for (size_t i = 0; i < pc.row.size(); ++i) {
    if (!pc.row[i]) {  // an equal root is the maximal agreement
      best = i;
      break;
    }
    if (!best || *pc.row[i] > bestv) {
      bestv = *pc.row[i];
      best = i;
    }
  }
  Branch out = pc.b;
  out.root = conj.at(*best);
  return out;
}

std::vector<Rat> contact_set(const Factorization& F) {
  std::set<Rat> vals;
  for (const auto& fm : F.factors) {
    CharSeq cs = char_seq(fm.first);
    for (const Rat& ci : cs.c)
      if (!rat_is_int(ci)) vals.insert(ci);
  }
  for (size_t i = 0; i < F.factors.size(); ++i)
    for (size_t j = i + 1; j < F.factors.size(); ++j) {
      ExtRat v = noc(F.factors[i].first, F.factors[j].first);
      if (!v.is_pos_inf()) vals.insert(v.value());
    }
  return std::vector<Rat>(vals.begin(), vals.end());
}

std::vector<Rat> contact_set_product(const Factorization& F,
                                     const Factorization& G) {
  if (!F.factors.empty() && !G.factors.empty() && F.field != G.field)
    throw Error("factorizations must share one coefficient tower");
  std::set<Rat> vals;
  for (const Rat& v : contact_set(F)) vals.insert(v);
  for (const Rat& v : contact_set(G)) vals.insert(v);
  for (const auto& fm : F.factors)
    for (const auto& gm : G.factors) {
      ExtRat v = noc(fm.first, gm.first);
      if (!v.is_pos_inf()) vals.insert(v.value());
    }
  return std::vector<Rat>(vals.begin(), vals.end());
}

ContactTree build_tree(const std::vector<Branch>& stems,
                       const std::vector<Rat>& levels) {
  ContactTree T;
  if (stems.empty()) {
    Factorization fy = factor(MPoly::y());
    T.branches.push_back(fy.factors.front().first);
  } else {
    T.branches = stems;
    for (const Branch& b : T.branches) {
      if (!b.origin) throw Error("tree stems need origin-backed branches");
      if (b.field != T.branches.front().field)
        throw Error("tree stems need one coefficient tower");
    }
  }
  const size_t m = T.branches.size();
  T.nocs.assign(m, std::vector<ExtRat>(m, ExtRat::pos_inf()));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      ExtRat v = noc(T.branches[i], T.branches[j]);
      T.nocs[i][j] = v;
      T.nocs[j][i] = v;
    }

  T.levels.push_back(ExtRat::neg_inf());
  {
    const std::set<Rat> ls(levels.begin(), levels.end());
    for (const Rat& l : ls) T.levels.push_back(ExtRat(l));
  }

  Bud root;
  root.stem.resize(m);
  std::iota(root.stem.begin(), root.stem.end(), size_t{0});
  root.level = ExtRat::neg_inf();
  T.buds.push_back(std::move(root));

  std::vector<long> owner(m, 0);
  for (size_t li = 1; li < T.levels.size(); ++li) {
    const ExtRat lam = T.levels[li];
    std::vector<size_t> cls = closure_classes(
        m, [&](size_t i, size_t j) { return T.nocs[i][j] >= lam; });
    std::vector<long> next(m, -1);
    for (size_t rep = 0; rep < m; ++rep) {
      if (cls[rep] != rep) continue;
      Bud b;
      for (size_t i = 0; i < m; ++i)
        if (cls[i] == rep) b.stem.push_back(i);
      b.level = lam;
      b.parent = owner[rep];
      b.data = lambda_data(T.branches[rep], lam.value());
      const long idx = static_cast<long>(T.buds.size());
      for (size_t i : b.stem) next[i] = idx;
      T.buds.push_back(std::move(b));
    }
    owner = std::move(next);
  }
  return T;
}

ContactTree tree_over(const Factorization& fac) {
  if (fac.chi == 0) throw ConstantInput("input has no monic factors");
  std::vector<Branch> stems;
  for (const auto& fm : fac.factors) stems.push_back(fm.first);
  return build_tree(stems, contact_set(fac));
}

ContactTree tree_of(const MPoly& F) { return tree_over(factor(F)); }

ContactTree tree_of(const MPoly& F, const NewtonOptions& opt) {
  return tree_over(factor(F, opt));
}

ContactTree tree_of_product(const MPoly& F, const MPoly& G) {
  return tree_of(F * G);
}

std::vector<size_t> roof(const ContactTree& T, size_t bud) {
  std::vector<size_t> out;
  for (size_t i = 0; i < T.buds.size(); ++i)
    if (T.buds[i].parent == static_cast<long>(bud)) out.push_back(i);
  return out;
}

std::vector<size_t> preroof(const ContactTree& T, size_t bud) {
  std::vector<char> in(T.buds.size(), 0);
  in.at(bud) = 1;
  std::vector<size_t> out;
  // parents precede children in the bud order, so one sweep closes the set
  for (size_t i = 0; i < T.buds.size(); ++i) {
    if (i == bud) continue;
    const long p = T.buds[i].parent;
    if (p >= 0 && in[static_cast<size_t>(p)]) {
      in[i] = 1;
      out.push_back(i);
    }
  }
  return out;
}

std::vector<StrictFriend> strict_friends(const ContactTree& T, size_t bud) {
  const Bud& B = T.buds.at(bud);
  const size_t k = B.stem.size();
  std::vector<size_t> cls = closure_classes(k, [&](size_t i, size_t j) {
    return T.nocs[B.stem[i]][B.stem[j]] > B.level;
  });
  std::vector<StrictFriend> out;
  for (size_t rep = 0; rep < k; ++rep) {
    if (cls[rep] != rep) continue;
    StrictFriend fr;
    for (size_t i = 0; i < k; ++i)
      if (cls[i] == rep) fr.members.push_back(B.stem[i]);
    if (B.level.is_neg_inf()) {
      fr.Dstar = 1;
      fr.E0 = Num(0);
    } else {
      // level data of a class member, on the conjugate aligned with the
      // bud representative so constants are comparable across the stem
      const Branch& ref = T.branches[B.stem.front()];
      const Branch& mem = T.branches[fr.members.front()];
      Branch al = (fr.members.front() == B.stem.front())
                      ? ref
                      : aligned_branch(ref, mem);
      LambdaData ld = lambda_data(al, B.level.value());
      fr.Dstar = ld.Dstar;
      fr.E0 = ld.E0;
    }
    out.push_back(std::move(fr));
  }
  return out;
}

long d_prime(const ContactTree& T, size_t bud) {
  const std::vector<StrictFriend> fr = strict_friends(T, bud);
  const Bud& B = T.buds.at(bud);
  if (B.level.is_neg_inf()) return -1 + static_cast<long>(fr.size());
  long sum = 0;
  for (const StrictFriend& f : fr) sum += f.Dstar;
  return -B.data->D + sum;
}

long d_double_prime(const ContactTree& T, size_t bud) {
  const Bud& B = T.buds.at(bud);
  long sum = 0;
  for (size_t i : B.stem) sum += T.branches[i].n;
  if (B.level.is_neg_inf()) return -1 + sum;
  return -B.data->D + sum;
}

ExtRat stem_noc(const ContactTree& T, size_t bud, const Branch& f) {
  const Bud& B = T.buds.at(bud);
  ExtRat best = ExtRat::pos_inf();
  for (size_t i : B.stem) {
    ExtRat v = noc(f, T.branches[i]);
    if (v < best) best = v;
  }
  return best;
}

Rat bud_noc(const ContactTree& T, size_t bud, const Branch& f) {
  const Bud& B = T.buds.at(bud);
  if (B.level.is_neg_inf()) throw Error("bud_noc needs a proper bud");
  ExtRat v = stem_noc(T, bud, f);
  if (v < B.level) return v.value();
  return B.level.value();
}

bool in_flower(const ContactTree& T, size_t bud, const Branch& f) {
  return stem_noc(T, bud, f) >= T.buds.at(bud).level;
}

bool in_strict_flower(const ContactTree& T, size_t bud, const Branch& f) {
  return stem_noc(T, bud, f) > T.buds.at(bud).level;
}

bool verify_contact_triangle(const Branch& f, const Branch& fp,
                             const Branch& fpp) {
  std::vector<ExtRat> v = {noc(f, fp), noc(fp, fpp), noc(f, fpp)};
  std::sort(v.begin(), v.end());
  return v[0] == v[1];
}

bool verify_contact_intersection(const Branch& f, const Branch& fp) {
  const ExtRat lam = noc(f, fp);
  if (lam.is_pos_inf()) return true;
  LambdaData ld = lambda_data(f, lam.value());
  const Rat want = Rat(ld.S * Rat(f.n) * Rat(fp.n));
  Branch a = f;
  Branch b = fp;
  for (int round = 0; round < 60; ++round) {
    Series v = eval_root(branch_poly(b), a.n, a.root);
    if (v.is_exact_zero()) throw Error("unexpected zero evaluation");
    if (v.has_terms()) return Rat(v.ord_x().value()) == want;
    auto bump = [](const Branch& x) {
      const Rat p = x.prec().is_pos_inf() ? Rat(0) : x.prec().value();
      return Rat(std::max(Rat(p * 2), Rat(p + 4)));
    };
    a = refine(a, bump(a));
    b = refine(b, bump(b));
  }
  throw PrecisionCapExceeded("intersection order stayed undecided");
}

}  // namespace merocurve
