#include "merocurve/meropoly.hpp"

#include <cassert>
#include <numeric>
#include <sstream>

#include "merocurve/errors.hpp"
#include "merocurve/polygcd.hpp"

namespace merocurve {

MPoly MPoly::y_pow(long j) {
  assert(j >= 0);
  return from_coeffs({{j, Series::constant(Num(1))}});
}

MPoly MPoly::constant(Series a) { return from_coeffs({{0, std::move(a)}}); }

MPoly MPoly::from_coeffs(std::map<long, Series> m) {
  MPoly g;
  for (auto& [j, a] : m) {
    assert(j >= 0);
    if (a.is_exact_zero()) continue;
    g.c_.emplace(j, std::move(a));
  }
  return g;
}

Series MPoly::coeff(long j) const {
  auto it = c_.find(j);
  return it == c_.end() ? Series() : it->second;
}

std::string MPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.str();
    if (it->first > 0) os << "*Y^" << it->first;
  }
  return os.str();
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  std::map<long, Series> m = a.coeffs();
  for (const auto& [j, s] : b.coeffs()) {
    auto [it, fresh] = m.emplace(j, s);
    if (!fresh) it->second = it->second + s;
  }
  return MPoly::from_coeffs(std::move(m));
}

MPoly operator-(const MPoly& a) {
  std::map<long, Series> m;
  for (const auto& [j, s] : a.coeffs()) m.emplace(j, -s);
  return MPoly::from_coeffs(std::move(m));
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  std::map<long, Series> m;
  for (const auto& [j, s] : a.coeffs())
    for (const auto& [k, t] : b.coeffs()) {
      Series p = s * t;
      auto [it, fresh] = m.emplace(j + k, p);
      if (!fresh) it->second = it->second + p;
    }
  return MPoly::from_coeffs(std::move(m));
}

MPoly operator*(const Series& s, const MPoly& a) {
  std::map<long, Series> m;
  for (const auto& [j, t] : a.coeffs()) m.emplace(j, s * t);
  return MPoly::from_coeffs(std::move(m));
}

MPoly operator*(const Num& s, const MPoly& a) {
  std::map<long, Series> m;
  for (const auto& [j, t] : a.coeffs()) m.emplace(j, s * t);
  return MPoly::from_coeffs(std::move(m));
}

MPoly mul_y_pow(const MPoly& a, long k) {
  assert(k >= 0);
  std::map<long, Series> m;
  for (const auto& [j, t] : a.coeffs()) m.emplace(j + k, t);
  return MPoly::from_coeffs(std::move(m));
}

MPoly pow(const MPoly& a, long k) {
  assert(k >= 0);
  MPoly r = MPoly::constant(Series::constant(Num(1)));
  for (long i = 0; i < k; ++i) r = r * a;
  return r;
}

ExtRat ord_x(const MPoly& g) {
  ExtRat best = ExtRat::pos_inf();
  for (const auto& [j, s] : g.coeffs())
    if (s.has_terms()) best = min(best, s.ord_x());
  for (const auto& [j, s] : g.coeffs())
    if (!s.has_terms() && s.trunc() <= best)
      throw PrecisionExhausted("ord_x undetermined by a truncated coefficient");
  return best;
}

long deg_y(const MPoly& g) {
  if (g.is_exact_zero()) throw ZeroPolynomial("deg_y of the zero polynomial");
  const auto& top = g.coeffs().rbegin()->second;
  if (!top.has_terms() && !top.is_exact())
    throw PrecisionExhausted("deg_y undetermined: empty truncated lead");
  return g.coeffs().rbegin()->first;
}

namespace {

void require_exact(const MPoly& g, const char* what) {
  for (const auto& [j, s] : g.coeffs())
    if (!s.is_exact())
      throw PrecisionExhausted(std::string(what) +
                               " needs exact coefficients");
}

}  // namespace

std::vector<Rat> supp_x(const MPoly& g) {
  require_exact(g, "supp_x");
  std::vector<Rat> out;
  for (const auto& [j, s] : g.coeffs())
    for (const auto& [e, c] : s.terms()) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<long> supp_y(const MPoly& g) {
  require_exact(g, "supp_y");
  std::vector<long> out;
  for (const auto& [j, s] : g.coeffs()) out.push_back(j);
  return out;
}

std::vector<std::pair<Rat, long>> supp_xy(const MPoly& g) {
  require_exact(g, "supp_xy");
  std::vector<std::pair<Rat, long>> out;
  for (const auto& [j, s] : g.coeffs())
    for (const auto& [e, c] : s.terms()) out.emplace_back(e, j);
  std::sort(out.begin(), out.end());
  return out;
}

KPoly inco_x(const MPoly& g) {
  if (g.is_exact_zero()) throw ZeroPolynomial("inco_x of the zero polynomial");
  ExtRat o = ord_x(g);
  Rat e = o.value();
  std::vector<Num> cs;
  for (const auto& [j, s] : g.coeffs()) {
    Num c = s.coeff_at(e);
    if (c.is_zero()) continue;
    if (static_cast<long>(cs.size()) <= j) cs.resize(j + 1);
    cs[j] = c;
  }
  return KPoly(std::move(cs));
}

Series deco_y(const MPoly& g) { return g.coeff(deg_y(g)); }

ExtRat ord_total(const MPoly& g) {
  ExtRat best = ExtRat::pos_inf();
  for (const auto& [j, s] : g.coeffs())
    if (s.has_terms()) best = min(best, s.ord_x() + ExtRat(Rat(j)));
  for (const auto& [j, s] : g.coeffs())
    if (s.trunc() + ExtRat(Rat(j)) <= best)
      throw PrecisionExhausted("ord_total within truncated range");
  return best;
}

MPoly info(const MPoly& g) {
  if (g.is_exact_zero()) return MPoly();
  Rat m = ord_total(g).value();
  std::map<long, Series> out;
  for (const auto& [j, s] : g.coeffs()) {
    Num c = s.coeff_at(m - j);
    if (!c.is_zero()) out.emplace(j, Series::monomial(c, m - j));
  }
  return MPoly::from_coeffs(std::move(out));
}

bool is_laurent(const MPoly& g) {
  for (const auto& [j, s] : g.coeffs())
    if (!s.is_exact() || (s.has_terms() && s.ram() != 1)) return false;
  return true;
}

namespace {

void require_laurent(const MPoly& g, const char* what) {
  if (!is_laurent(g))
    throw PrecisionExhausted(std::string(what) +
                             " needs Laurent-polynomial coefficients");
}

}  // namespace

long deg_total(const MPoly& g) {
  require_laurent(g, "deg_total");
  if (g.is_exact_zero()) throw ZeroPolynomial("deg_total of zero");
  long best = 0;
  bool seen = false;
  for (const auto& [j, s] : g.coeffs())
    for (const auto& [i, c] : s.raw()) {
      long v = i + j;
      if (!seen || v > best) best = v;
      seen = true;
    }
  return best;
}

MPoly defo(const MPoly& g) {
  require_laurent(g, "defo");
  if (g.is_exact_zero()) return MPoly();
  long m = deg_total(g);
  std::map<long, Series> out;
  for (const auto& [j, s] : g.coeffs()) {
    Num c = s.coeff_at(Rat(m - j));
    if (!c.is_zero()) out.emplace(j, Series::monomial(c, Rat(m - j)));
  }
  return MPoly::from_coeffs(std::move(out));
}

Views views(const MPoly& g) {
  Views v;
  v.ord_x = ord_x(g);
  if (!g.is_exact_zero()) {
    v.deg_y = deg_y(g);
    v.inco_x = inco_x(g);
    v.deco_y = deco_y(g);
  }
  v.supp_x = supp_x(g);
  v.supp_y = supp_y(g);
  v.supp_xy = supp_xy(g);
  v.ord_total = ord_total(g);
  v.info = info(g);
  if (is_laurent(g) && !g.is_exact_zero()) {
    v.deg_total = deg_total(g);
    v.defo = defo(g);
  }
  return v;
}

MPoly partial_x(const MPoly& g) {
  std::map<long, Series> m;
  for (const auto& [j, s] : g.coeffs()) m.emplace(j, derivative_x(s));
  return MPoly::from_coeffs(std::move(m));
}

MPoly partial_y(const MPoly& g) {
  std::map<long, Series> m;
  for (const auto& [j, s] : g.coeffs())
    if (j >= 1) m.emplace(j - 1, Num(j) * s);
  return MPoly::from_coeffs(std::move(m));
}

MPoly jacobian(const MPoly& F, const MPoly& G) {
  return partial_x(F) * partial_y(G) - partial_x(G) * partial_y(F);
}

MPoly subst_x_pow(const MPoly& g, long V) {
  std::map<long, Series> m;
  for (const auto& [j, s] : g.coeffs()) m.emplace(j, substitute_pow(s, V));
  return MPoly::from_coeffs(std::move(m));
}

MPoly subst_x_root(const MPoly& g, long k) {
  std::map<long, Series> m;
  for (const auto& [j, s] : g.coeffs()) m.emplace(j, substitute_root(s, k));
  return MPoly::from_coeffs(std::move(m));
}

Series resultant_y(const MPoly& f, const MPoly& g) {
  require_laurent(f, "resultant_y");
  require_laurent(g, "resultant_y");
  return sylvester_resultant(f, g);
}

Rat int_mult(const MPoly& f, const MPoly& g) {
  if (g.is_exact_zero()) throw ZeroArgument("int_mult with zero argument");
  Series r = resultant_y(f, g);
  if (r.is_exact_zero())
    throw ZeroArgument("int_mult infinite: common factor");
  return r.ord_x().value();
}

MPoly compose_deformation(const MPoly& H, const Series& z,
                          const EdgeTriple& t) {
  Series zd = trunc_dagger(z, t);
  long d = H.is_exact_zero() ? 0 : H.coeffs().rbegin()->first;
  std::vector<Series> zpow(d + 1);
  zpow[0] = Series::constant(Num(1));
  for (long i = 1; i <= d; ++i) zpow[i] = zpow[i - 1] * zd;
  // Binomial coefficients j choose r as exact rationals.
  std::map<long, Series> out;
  for (const auto& [j, s] : H.coeffs()) {
    Series sj = substitute_pow(s, t.V);
    Rat binom(1);
    for (long r = 0; r <= j; ++r) {
      Series term = mul_monomial(sj * zpow[j - r], Num(binom), Rat(t.W * r));
      auto [it, fresh] = out.emplace(r, term);
      if (!fresh) it->second = it->second + term;
      binom = binom * (j - r) / (r + 1);
    }
  }
  return MPoly::from_coeffs(std::move(out));
}

Series eval_root(const MPoly& H, long n, const Series& z) {
  assert(n >= 1);
  Series acc;
  long prev = -1;
  for (auto it = H.coeffs().rbegin(); it != H.coeffs().rend(); ++it) {
    long j = it->first;
    if (prev >= 0) acc = acc * pow(z, prev - j);
    acc = acc + substitute_pow(it->second, n);
    prev = j;
  }
  if (prev > 0) acc = acc * pow(z, prev);
  return acc;
}

}  // namespace merocurve
