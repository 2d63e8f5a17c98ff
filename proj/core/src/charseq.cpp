#include "merocurve/charseq.hpp"

#include <numeric>

namespace merocurve {
namespace {

// m_1 and the later m_i from the stored keys. Returns false when the chain
// is blocked by the budget (every stored key inside the current d-grid).
bool chain_from_prefix(const Series& z, long n, CharSeq& out) {
  out = CharSeq{};
  out.m = {n};
  out.d = {0, n};
  out.q = {n};
  out.s = {n};
  out.r = {n};
  if (z.is_exact_zero()) return true;  // the branch Y: h = 0
  if (!z.has_terms()) return false;

  std::vector<long> keys;
  for (const auto& [e, cf] : z.terms()) keys.push_back(rat_num_l(e));

  long m_i = keys.front();
  long d_i = n;
  long s_acc = 0;  // s_i = q_1 d_1 + ... + q_i d_i, without the s_0 = n seed
  for (;;) {
    long q_i = (out.h == 0) ? m_i : m_i - out.m.back();
    s_acc += q_i * d_i;
    out.h += 1;
    out.m.push_back(m_i);
    out.q.push_back(q_i);
    out.s.push_back(s_acc);
    out.r.push_back(s_acc / d_i);
    out.c.push_back(rat(m_i, n));
    long d_next = std::gcd(std::abs(d_i), std::abs(m_i));
    out.d.push_back(d_next);
    if (d_next == 1) return true;
    d_i = d_next;
    bool found = false;
    for (long k : keys)
      if (k % d_i != 0) {
        m_i = k;
        found = true;
        break;
      }
    if (!found) {
      if (z.is_exact())
        throw Error("branch root support never leaves the d-grid");
      return false;
    }
  }
}

// The root truncated at the grid cut, descended to the X^Dval grid where it
// is an honest degree-Dval branch root.
MPoly truncation_poly(const Branch& b, const Rat& grid, bool closed,
                      long Dval) {
  std::map<long, Num> terms;
  for (const auto& [e, cf] : b.root.terms()) {
    if (!(closed ? e <= grid : e < grid)) continue;
    Rat k = e * Rat(Dval) / Rat(b.n);
    terms[rat_num_l(k)] = cf;  // integral: kept keys sit on the d-grid
  }
  Branch tb;
  tb.n = Dval;
  tb.root = Series::from_terms(1, std::move(terms), ExtRat::pos_inf());
  tb.field = b.field;
  return branch_poly(tb);
}

}  // namespace

KPoly LambdaData::E() const {
  std::vector<Num> c(static_cast<size_t>(Dstar / D) + 1, Num(0));
  c[0] = Num(0) - E0;
  c.back() = Num(1);
  return KPoly(std::move(c));
}

KPoly LambdaData::Ehat() const {
  KPoly e = E();
  KPoly out = KPoly::constant(Num(1));
  for (long i = 0; i < n / Dstar; ++i) out = out * e;
  return out;
}

CharSeq char_seq(const Branch& b) {
  CharSeq out;
  if (chain_from_prefix(b.root, b.n, out)) return out;
  Branch cur = b;
  for (int round = 0; round < 60; ++round) {
    Rat prec = cur.prec().value();
    cur = refine(cur, std::max(Rat(prec * 2), Rat(prec + 4)));
    if (chain_from_prefix(cur.root, cur.n, out)) return out;
  }
  throw PrecisionCapExceeded("characteristic sequence did not stabilize");
}

LambdaData lambda_data(const Branch& b, const Rat& lambda) {
  Branch cur = b;
  Rat grid = lambda * b.n;
  if (!(cur.prec() > ExtRat(grid))) cur = refine(cur, grid + 1);
  CharSeq cs = char_seq(cur);

  LambdaData out;
  out.lambda = lambda;
  out.n = b.n;
  for (const Rat& ci : cs.c) {
    if (ci < lambda) ++out.p;
    if (ci <= lambda) ++out.pstar;
  }
  out.D = b.n / cs.d[out.p + 1];
  out.Dstar = b.n / cs.d[out.pstar + 1];
  if (out.p == 0) {
    out.S = lambda;
  } else {
    out.S = (Rat(cs.s[out.p]) + (grid - cs.m[out.p]) * cs.d[out.p + 1]) /
            Rat(b.n * b.n);
  }

  Num a(1);
  for (long i = 1; i <= out.p; ++i) {
    long step = cs.d[i] / cs.d[i + 1];
    Num zi = cur.root.coeff_at(Rat(cs.m[i]));
    a = a * (Num(step) * zi.pow(step - 1)).pow(cs.d[i + 1] * out.D / b.n);
  }
  out.A = a;
  out.Ahat = a.pow(b.n / out.D);

  Num zl(0);
  if (rat_is_int(grid)) zl = cur.root.coeff_at(grid);
  out.E0 = zl.pow(out.Dstar / out.D);

  out.t = truncation_poly(cur, grid, false, out.D);
  out.tstar = truncation_poly(cur, grid, true, out.Dstar);

  long V0 = std::lcm(out.D, rat_den_l(lambda));
  for (long mult : {1L, 2L}) {
    EdgeSample s;
    s.z = cur.root;
    s.U = b.n;
    s.V = V0 * mult;
    s.W = rat_num_l(lambda * Rat(s.V));
    out.edge_samples.push_back(std::move(s));
  }
  return out;
}

bool verify_edge_deformation(const Branch& b, const Rat& lambda,
                             const EdgeSample& sample) {
  LambdaData ld = lambda_data(b, lambda);
  Rat want_ord = ld.S * Rat(b.n) * Rat(sample.V);
  KPoly want_inco = KPoly::constant(ld.Ahat) * ld.Ehat();

  MPoly fpoly;
  bool have_exact = false;
  if (b.origin) {
    const MPoly& g = *b.origin;
    if (is_laurent(g) && deg_y(g) == b.n &&
        (deco_y(g) - Series::constant(Num(1))).is_exact_zero()) {
      fpoly = g;
      have_exact = true;
    }
  }
  EdgeTriple tr{sample.U, sample.V, sample.W};
  Branch cur = b;
  for (int round = 0; round < 60; ++round) {
    if (!have_exact) fpoly = branch_poly(cur);
    try {
      MPoly comp = compose_deformation(fpoly, sample.z, tr);
      if (ord_x(comp) != ExtRat(want_ord)) return false;
      return (inco_x(comp) - want_inco).is_zero();
    } catch (const PrecisionExhausted&) {
      if (have_exact) throw;
      Rat prec = cur.prec().value();
      cur = refine(cur, std::max(Rat(prec * 2), Rat(prec + 4)));
    }
  }
  throw PrecisionCapExceeded("edge deformation check did not stabilize");
}

}  // namespace merocurve
