#include "merocurve/newton.hpp"

#include <algorithm>
#include <cassert>

#include "merocurve/errors.hpp"
#include "merocurve/polygcd.hpp"

namespace merocurve {

namespace {

long top_deg(const MPoly& f) {
  assert(!f.is_exact_zero());
  return f.coeffs().rbegin()->first;
}

// Stored terms reinterpreted as an exact polynomial.
Series exactify(const Series& s) {
  return Series::from_terms(s.ram(), s.raw(), ExtRat::pos_inf());
}

// y with X^(1/ram) -> zeta * X^(1/ram).
Series twist(const Series& y, const Num& zeta) {
  std::map<long, Num> m;
  for (const auto& [i, c] : y.raw()) m.emplace(i, zeta.pow(i) * c);
  return Series::from_terms(y.ram(), std::move(m), y.trunc());
}

// g(X^q, X^p (gamma + Y)) with the X-content monomial removed.
MPoly shift_sub(const MPoly& g, long q, long p, const Num& gamma) {
  std::map<long, Series> out;
  for (const auto& [j, s] : g.coeffs()) {
    Series sj = substitute_pow(s, q);
    Rat binom(1);
    for (long r = 0; r <= j; ++r) {
      Series term = mul_monomial(sj, Num(binom) * gamma.pow(j - r),
                                 Rat(p * j));
      auto [it, fresh] = out.emplace(r, term);
      if (!fresh) it->second = it->second + term;
      binom = binom * (j - r) / (r + 1);
    }
  }
  MPoly h = MPoly::from_coeffs(std::move(out));
  ExtRat o = ord_x(h);
  if (o.is_finite() && o.value() != 0) {
    std::map<long, Series> shifted;
    for (const auto& [j, s] : h.coeffs())
      shifted.emplace(j, mul_monomial(s, Num(1), -o.value()));
    h = MPoly::from_coeffs(std::move(shifted));
  }
  return h;
}

// All Puiseux roots of g below `budget` (positive-order roots only when
// positive_only), exact roots with infinite budget. Emits one Series per
// root.
void expand_roots(const MPoly& g, const Rat& budget, bool positive_only,
                  Field& field, int depth, std::vector<Series>& out) {
  if (depth > 10000)
    throw PrecisionCapExceeded("root expansion did not terminate");
  if (g.is_exact_zero() || top_deg(g) == 0) return;
  NewtonPolygon np = newton_polygon(g);
  if (np.zero_mult > 1)
    throw NotSquarefree("repeated zero root in expansion");
  for (long t = 0; t < np.zero_mult; ++t) out.push_back(Series());
  for (const auto& face : np.faces) {
    Rat mu = -face.slope;
    if (positive_only && mu <= 0) continue;
    KPoly remaining = kpoly_squarefree_part(face.poly);
    while (remaining.deg() >= 1) {
      Num gamma = field.adjoin_root(remaining.monic());
      KPoly lin({-gamma, Num(1)});
      long m = 0;
      KPoly rem = face.poly;
      while (true) {
        auto [quo, r] = divrem_monic(rem, lin);
        if (!r.is_zero()) break;
        rem = quo;
        ++m;
      }
      assert(m >= 1);
      auto [defl, r2] = divrem_monic(remaining, lin);
      assert(r2.is_zero());
      remaining = defl;

      Series head = Series::monomial(gamma, mu);
      Rat next_budget = (budget - mu) * rat_den_l(mu);
      if (next_budget <= 0) {
        for (long r = 0; r < m; ++r)
          out.push_back(truncate(head, ExtRat(std::min(budget, mu))));
        continue;
      }
      MPoly h = shift_sub(g, rat_den_l(mu), rat_num_l(mu), gamma);
      std::vector<Series> sub;
      expand_roots(h, next_budget, true, field, depth + 1, sub);
      if (static_cast<long>(sub.size()) != m)
        throw Error("expansion cluster count mismatch");
      for (const auto& y : sub)
        out.push_back(head +
                      mul_monomial(substitute_root(y, rat_den_l(mu)),
                                   Num(1), mu));
    }
  }
}

struct Cert {
  ExtRat beta;   // ord f(X^n, zhat)
  ExtRat gamma;  // ord f_Y(X^n, zhat)
  bool exact() const { return beta.is_pos_inf(); }
  bool good() const {
    return exact() || beta.value() > 2 * (gamma.is_finite() ? gamma.value()
                                                            : Rat(0));
  }
  Rat certified() const {
    return beta.value() - (gamma.is_finite() ? gamma.value() : Rat(0));
  }
};

Cert certificate(const MPoly& g, long n, const Series& zhat) {
  return Cert{eval_root(g, n, zhat).ord_x(),
              eval_root(partial_y(g), n, zhat).ord_x()};
}

// Quadratic refinement of a certified prefix until the residual order
// reaches min_beta and the certified budget reaches target.
Series newton_refine(const MPoly& g, long n, Series zhat, const Rat& target,
                     const Rat& min_beta) {
  for (int iter = 0; iter < 500; ++iter) {
    Cert c = certificate(g, n, zhat);
    if (c.exact()) return exactify(zhat);
    if (!c.good())
      throw PrecisionCapExceeded("refinement certificate lost");
    Rat cert = c.certified();
    if (cert >= target && c.beta.value() >= min_beta)
      return truncate(exactify(zhat), ExtRat(cert));
    Rat gamma = c.gamma.is_finite() ? c.gamma.value() : Rat(0);
    Rat keep =
        std::max(Rat(2 * cert - gamma), std::max(target, Rat(min_beta - gamma))) +
        1;
    Series fv = eval_root(g, n, zhat);
    Series dv = eval_root(partial_y(g), n, zhat);
    Series quo = fv * invert(dv, ExtRat(keep));
    zhat = exactify(truncate(exactify(zhat) - quo, ExtRat(keep)));
  }
  throw PrecisionCapExceeded("refinement did not converge");
}

int series_lex_cmp(const Series& a, const Series& b) {
  auto ta = a.terms();
  auto tb = b.terms();
  for (size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    if (ta[i].first != tb[i].first) return ta[i].first < tb[i].first ? -1 : 1;
    int c = rep_cmp(ta[i].second, tb[i].second);
    if (c != 0) return c;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

bool branch_less(const Branch& a, const Branch& b) {
  if (a.n != b.n) return a.n < b.n;
  return series_lex_cmp(a.root, b.root) < 0;
}

struct Engine {
  FieldPtr field;
  long maxfac;

  // Roots of a squarefree exact input with deg_Y >= 1; deco may be any
  // nonzero Laurent polynomial.
  std::vector<Branch> roots_of(const MPoly& g, const Rat& tau_req) {
    origin_ = &g;
    long d = top_deg(g);
    Rat span(2);
    for (const auto& face : newton_polygon(g).faces)
      span += abs(face.slope) * face.length;
    Rat L0 = span + 2;
    if (tau_req > L0) L0 = tau_req;

    std::vector<Series> prefixes;
    std::vector<std::vector<size_t>> orbits;
    std::optional<Rat> cap;  // from the discriminant, on first retry
    for (Rat L = L0;; L = L * 2) {
      if (L > L0 && !cap) {
        // The discriminant order bounds every pairwise root contact, so a
        // budget well beyond it can only keep failing for repeated roots.
        Series res = sylvester_resultant(g, partial_y(g));
        if (res.is_exact_zero())
          throw NotSquarefree("expansion input has repeated roots");
        long dec_ord = rat_num_l(g.coeff(d).ord_x().value());
        Rat ord_disc = res.ord_x().value() - Rat((2 * d - 1) * dec_ord);
        Rat bound = abs(ord_disc) + d * span + 2;
        if (bound < L0) bound = L0;
        cap = bound * maxfac;
      }
      if (cap && L > *cap)
        throw PrecisionCapExceeded("root separation exceeded the budget cap");
      prefixes.clear();
      expand_roots(g, L, false, *field, 0, prefixes);
      if (static_cast<long>(prefixes.size()) != d)
        throw Error("root count mismatch");
      if (separate_and_group(prefixes, orbits)) break;
    }

    std::vector<Branch> out;
    auto shared_origin = std::make_shared<const MPoly>(g);
    for (const auto& orbit : orbits) {
      long n = std::max<long>(prefixes[orbit[0]].ram(), 1);
      // Canonical representative on the X^n grid.
      Series best;
      bool have = false;
      for (size_t idx : orbit) {
        Series z = substitute_pow(prefixes[idx], n);
        if (!have || series_lex_cmp(z, best) < 0) {
          best = z;
          have = true;
        }
      }
      Branch b;
      b.n = n;
      b.origin = shared_origin;
      b.field = field;
      if (best.is_exact()) {
        b.root = best;
      } else {
        Rat target = tau_req * n;
        if (target < Rat(1)) target = Rat(1);
        b.root = newton_refine(g, n, exactify(best), target, target);
      }
      out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), branch_less);
    return out;
  }

  // True when the prefixes pairwise separate, every non-exact prefix holds a
  // refinement certificate, and the twist orbits close up.
  bool separate_and_group(const std::vector<Series>& prefixes,
                          std::vector<std::vector<size_t>>& orbits) {
    size_t d = prefixes.size();
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i + 1; j < d; ++j) {
        Series diff = prefixes[i] - prefixes[j];
        if (diff.has_terms()) continue;
        if (diff.is_exact_zero())
          throw NotSquarefree("two equal roots in expansion");
        return false;
      }
    for (const Series& y : prefixes) {
      if (y.is_exact()) continue;
      long n = std::max<long>(y.ram(), 1);
      if (!certificate(*origin_, n, exactify(substitute_pow(y, n))).good())
        return false;
    }
    orbits.clear();
    std::vector<char> used(d, 0);
    for (size_t i = 0; i < d; ++i) {
      if (used[i]) continue;
      long n = std::max<long>(prefixes[i].ram(), 1);
      Num zeta = field->primitive_root_of_unity(n);
      std::vector<size_t> orbit{i};
      used[i] = 1;
      Series cur = prefixes[i];
      for (long t = 1; t < n; ++t) {
        cur = twist(cur, zeta);
        bool found = false;
        for (size_t j = 0; j < d; ++j) {
          if (used[j] || prefixes[j].ram() != prefixes[i].ram()) continue;
          Series diff = cur - prefixes[j];
          if (!diff.has_terms()) {
            orbit.push_back(j);
            used[j] = 1;
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      orbits.push_back(std::move(orbit));
    }
    return true;
  }

  const MPoly* origin_ = nullptr;
};

void require_laurent_input(const MPoly& f, const char* what) {
  if (!is_laurent(f))
    throw PrecisionExhausted(std::string(what) +
                             " needs exact Laurent-polynomial input");
}

}  // namespace

NewtonPolygon newton_polygon(const MPoly& f) {
  if (f.is_exact_zero()) throw ZeroPolynomial("newton_polygon of 0");
  require_laurent_input(f, "newton_polygon");
  NewtonPolygon np;
  np.zero_mult = f.coeffs().begin()->first;
  std::vector<std::pair<long, Rat>> hull;
  for (const auto& [j, s] : f.coeffs()) {
    std::pair<long, Rat> p{j, s.ord_x().value()};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      Rat s1 = (b.second - a.second) / Rat(b.first - a.first);
      Rat s2 = (p.second - b.second) / Rat(p.first - b.first);
      if (s1 >= s2)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& [j1, o1] = hull[i];
    const auto& [j2, o2] = hull[i + 1];
    PolygonFace face;
    face.slope = (o2 - o1) / Rat(j2 - j1);
    face.length = j2 - j1;
    face.j_low = j1;
    std::vector<Num> cs(j2 - j1 + 1);
    for (const auto& [j, s] : f.coeffs()) {
      if (j < j1 || j > j2) continue;
      if (s.ord_x().value() == o1 + face.slope * Rat(j - j1))
        cs[j - j1] = s.lead_coeff();
    }
    face.poly = KPoly(std::move(cs));
    np.faces.push_back(std::move(face));
  }
  return np;
}

std::pair<MPoly, bool> squarefree_part(const MPoly& F) {
  require_laurent_input(F, "squarefree_part");
  if (F.is_exact_zero() || top_deg(F) == 0)
    throw ConstantInput("squarefree_part of an element of k((X))");
  MPoly p = primitive_part(F);
  MPoly g = gcd_y(p, partial_y(p));
  bool has_multiple = top_deg(g) >= 1;
  MPoly sf = divexact_y(p, g);
  Series dec = deco_y(sf);
  if (dec.raw().size() == 1) {
    Series inv = Series::monomial(dec.lead_coeff().inverse(),
                                  Rat(-dec.ord_x().value()));
    sf = inv * sf;
  } else {
    sf = dec.lead_coeff().inverse() * sf;
  }
  return {sf, has_multiple};
}

std::vector<Branch> puiseux_roots(const MPoly& f, const Rat& tau,
                                  const NewtonOptions& opt) {
  require_laurent_input(f, "puiseux_roots");
  if (f.is_exact_zero()) throw ZeroPolynomial("puiseux_roots of 0");
  Series dec = deco_y(f);
  if (!(dec - Series::constant(Num(1))).is_exact_zero())
    throw NotMonic("puiseux_roots requires a monic input");
  if (top_deg(f) == 0) return {};
  if (top_deg(gcd_y(f, partial_y(f))) >= 1)
    throw NotSquarefree("puiseux_roots requires a squarefree input");
  Engine eng{opt.field ? opt.field : Field::make(), opt.max_precision_factor};
  return eng.roots_of(f, tau);
}

Factorization factor(const MPoly& F, const NewtonOptions& opt) {
  require_laurent_input(F, "factor");
  if (F.is_exact_zero()) throw ZeroPolynomial("factor of 0");
  Factorization out;
  out.field = opt.field ? opt.field : Field::make();
  out.content = deco_y(F);
  if (top_deg(F) == 0) return out;
  Rat tau = opt.precision.value_or(Rat(0));
  Engine eng{out.field, opt.max_precision_factor};
  for (const auto& [mult, cls] : yun_squarefree(primitive_part(F))) {
    for (Branch& b : eng.roots_of(cls, tau))
      out.factors.emplace_back(std::move(b), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) {
              return branch_less(a.first, b.first);
            });
  for (const auto& [b, mult] : out.factors) out.chi += mult;
  return out;
}

Branch refine(const Branch& b, const Rat& tau2) {
  if (b.root.is_exact() || ExtRat(tau2) <= b.prec()) return b;
  Branch nb = b;
  nb.root = newton_refine(*b.origin, b.n, exactify(b.root), tau2, tau2);
  return nb;
}

std::vector<Series> conjugates(const Branch& b) {
  std::vector<Series> out;
  out.reserve(b.n);
  Num zeta = b.field->primitive_root_of_unity(b.n);
  Series cur = b.root;
  for (long t = 0; t < b.n; ++t) {
    out.push_back(cur);
    if (t + 1 < b.n) cur = twist(cur, zeta);
  }
  return out;
}

MPoly branch_poly(const Branch& b) {
  MPoly prod = MPoly::constant(Series::constant(Num(1)));
  for (const Series& z : conjugates(b))
    prod = prod * (MPoly::y() - MPoly::constant(z));
  for (const auto& [j, s] : prod.coeffs()) {
    (void)j;
    for (const auto& [i, c] : s.raw())
      if (i % b.n != 0) throw Error("branch product off the X^n grid");
  }
  return subst_x_root(prod, b.n);
}

Rat int_mult(const Branch& b, const MPoly& g) {
  if (g.is_exact_zero()) throw ZeroArgument("int_mult with zero argument");
  require_laurent_input(g, "int_mult");
  Branch cur = b;
  for (int round = 0; round < 60; ++round) {
    Series v = eval_root(g, cur.n, cur.root);
    if (v.is_exact_zero())
      throw ZeroArgument("int_mult infinite: branch divides the argument");
    if (v.has_terms()) return v.ord_x().value();
    Rat prec = cur.prec().value();
    Rat next = std::max(Rat(prec * 2), Rat(prec + 4));
    cur = refine(cur, next);
  }
  throw PrecisionCapExceeded("int_mult did not stabilize");
}

}  // namespace merocurve
