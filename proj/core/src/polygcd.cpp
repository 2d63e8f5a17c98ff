#include "merocurve/polygcd.hpp"

#include <cassert>

#include "merocurve/errors.hpp"

namespace merocurve {

namespace {

void require_laurent(const MPoly& g) {
  if (!is_laurent(g))
    throw PrecisionExhausted("exact Laurent-polynomial input required");
}

// Nonzero exact Series with integral support as X^shift * (poly with nonzero
// constant term).
KPoly to_kpoly(const Series& a, long& shift) {
  assert(a.has_terms() && a.ram() == 1);
  shift = a.raw().begin()->first;
  std::vector<Num> cs(a.raw().rbegin()->first - shift + 1);
  for (const auto& [i, c] : a.raw()) cs[i - shift] = c;
  return KPoly(std::move(cs));
}

Series from_kpoly(const KPoly& p, long shift) {
  std::map<long, Num> m;
  for (int i = 0; i <= p.deg(); ++i)
    if (!p[i].is_zero()) m.emplace(i + shift, p[i]);
  return Series::from_terms(1, std::move(m), ExtRat::pos_inf());
}

// Lead coefficient (lowest exponent) scaled to 1.
Series normalize_lead(const Series& a) {
  if (!a.has_terms()) return a;
  return a.lead_coeff().inverse() * a;
}

long top_deg(const MPoly& f) {
  assert(!f.is_exact_zero());
  return f.coeffs().rbegin()->first;
}

}  // namespace

Series laurent_gcd(const Series& a, const Series& b) {
  if (!a.has_terms()) return normalize_lead(b);
  if (!b.has_terms()) return normalize_lead(a);
  long sa = 0, sb = 0;
  KPoly pa = to_kpoly(a, sa);
  KPoly pb = to_kpoly(b, sb);
  KPoly g = kpoly_gcd_monic(pa, pb);
  return normalize_lead(from_kpoly(g, std::min(sa, sb)));
}

Series laurent_divexact(const Series& a, const Series& b) {
  if (!b.has_terms()) throw DivisionByZero("laurent_divexact by zero");
  if (!a.has_terms()) return Series();
  long sa = 0, sb = 0;
  KPoly pa = to_kpoly(a, sa);
  KPoly pb = to_kpoly(b, sb);
  Num lc = pb.coeffs().back();
  auto [q, r] = divrem_monic(pa, pb.monic());
  if (!r.is_zero()) throw Error("laurent_divexact: not divisible");
  std::vector<Num> cs = q.coeffs();
  Num inv = lc.inverse();
  for (Num& c : cs) c = inv * c;
  return from_kpoly(KPoly(std::move(cs)), sa - sb);
}

Series poly_content(const MPoly& f) {
  require_laurent(f);
  Series g;
  for (const auto& [j, s] : f.coeffs()) g = laurent_gcd(g, s);
  return g;
}

MPoly primitive_part(const MPoly& f) {
  if (f.is_exact_zero()) return f;
  Series c = poly_content(f);
  std::map<long, Series> m;
  for (const auto& [j, s] : f.coeffs()) m.emplace(j, laurent_divexact(s, c));
  return MPoly::from_coeffs(std::move(m));
}

void pseudo_divrem(const MPoly& f, const MPoly& g, MPoly& q, MPoly& r) {
  require_laurent(f);
  require_laurent(g);
  if (g.is_exact_zero()) throw DivisionByZero("pseudo_divrem by zero");
  long n = top_deg(g);
  Series lc = g.coeff(n);
  q = MPoly();
  r = f;
  long e = (f.is_exact_zero() ? 0 : top_deg(f)) - n + 1;
  if (e < 0) e = 0;
  while (!r.is_exact_zero() && top_deg(r) >= n) {
    long d = top_deg(r);
    MPoly term = mul_y_pow(MPoly::constant(r.coeff(d)), d - n);
    r = MPoly::constant(lc) * r - term * g;
    q = MPoly::constant(lc) * q + term;
    --e;
  }
  // Pad so that lc^(deg f - deg g + 1) f = q g + r exactly.
  for (; e > 0; --e) {
    q = MPoly::constant(lc) * q;
    r = MPoly::constant(lc) * r;
  }
}

MPoly divexact_y(const MPoly& f, const MPoly& g) {
  if (f.is_exact_zero()) return f;
  if (g.is_exact_zero()) throw DivisionByZero("divexact_y by zero");
  require_laurent(f);
  require_laurent(g);
  long n = top_deg(g);
  if (n == 0) {
    Series c = g.coeff(0);
    std::map<long, Series> m;
    for (const auto& [j, s] : f.coeffs())
      m.emplace(j, laurent_divexact(s, c));
    return MPoly::from_coeffs(std::move(m));
  }
  long m = top_deg(f);
  if (m < n) throw Error("divexact_y: not divisible");
  MPoly q, r;
  pseudo_divrem(f, g, q, r);
  if (!r.is_exact_zero()) throw Error("divexact_y: not divisible");
  Series scale = pow(g.coeff(n), m - n + 1);
  std::map<long, Series> out;
  for (const auto& [j, s] : q.coeffs())
    out.emplace(j, laurent_divexact(s, scale));
  return MPoly::from_coeffs(std::move(out));
}

MPoly gcd_y(const MPoly& f, const MPoly& g) {
  require_laurent(f);
  require_laurent(g);
  if (f.is_exact_zero() && g.is_exact_zero()) return MPoly();
  auto normalized = [](const MPoly& h) {
    long d = h.coeffs().rbegin()->first;
    return h.coeff(d).lead_coeff().inverse() * h;
  };
  MPoly a = f.is_exact_zero() ? MPoly() : primitive_part(f);
  MPoly b = g.is_exact_zero() ? MPoly() : primitive_part(g);
  if (a.is_exact_zero()) return normalized(b);
  if (b.is_exact_zero()) return normalized(a);
  if (top_deg(a) < top_deg(b)) std::swap(a, b);
  while (true) {
    if (top_deg(b) == 0)
      return MPoly::constant(Series::constant(Num(1)));
    MPoly q, r;
    pseudo_divrem(a, b, q, r);
    if (r.is_exact_zero()) return normalized(b);
    a = b;
    b = primitive_part(r);
  }
}

std::vector<std::pair<long, MPoly>> yun_squarefree(const MPoly& f) {
  require_laurent(f);
  std::vector<std::pair<long, MPoly>> out;
  if (f.is_exact_zero()) return out;
  MPoly p = primitive_part(f);
  if (top_deg(p) == 0) return out;
  MPoly g = gcd_y(p, partial_y(p));
  MPoly a = divexact_y(p, g);
  MPoly b = divexact_y(partial_y(p), g);
  MPoly c = b - partial_y(a);
  for (long i = 1; top_deg(a) >= 1; ++i) {
    assert(i <= 1000);
    MPoly d = gcd_y(a, c);
    if (!d.is_exact_zero() && top_deg(d) >= 1) out.emplace_back(i, d);
    a = divexact_y(a, d);
    b = divexact_y(c, d);
    c = b - partial_y(a);
  }
  return out;
}

Series sylvester_resultant(const MPoly& f, const MPoly& g) {
  if (f.is_exact_zero() || g.is_exact_zero()) return Series();
  require_laurent(f);
  require_laurent(g);
  long m = top_deg(f);
  long n = top_deg(g);
  if (m == 0 && n == 0) return Series::constant(Num(1));
  if (m == 0) return pow(f.coeff(0), n);
  if (n == 0) return pow(g.coeff(0), m);
  long N = m + n;
  std::vector<std::vector<Series>> A(N, std::vector<Series>(N));
  for (long r = 0; r < n; ++r)
    for (long c = 0; c <= m; ++c) A[r][r + c] = f.coeff(m - c);
  for (long r = 0; r < m; ++r)
    for (long c = 0; c <= n; ++c) A[n + r][r + c] = g.coeff(n - c);
  Series prev = Series::constant(Num(1));
  int sign = 1;
  for (long k = 0; k + 1 < N; ++k) {
    long p = k;
    while (p < N && !A[p][k].has_terms()) ++p;
    if (p == N) return Series();
    if (p != k) {
      std::swap(A[p], A[k]);
      sign = -sign;
    }
    for (long i = k + 1; i < N; ++i) {
      for (long j = k + 1; j < N; ++j)
        A[i][j] =
            laurent_divexact(A[k][k] * A[i][j] - A[i][k] * A[k][j], prev);
      A[i][k] = Series();
    }
    prev = A[k][k];
  }
  Series det = A[N - 1][N - 1];
  return sign < 0 ? -det : det;
}

}  // namespace merocurve
