#include "merocurve/puiseux.hpp"

#include <cassert>
#include <numeric>
#include <sstream>

namespace merocurve {

namespace {

void check_triple(const EdgeTriple& t) {
  if (t.U <= 0 || t.V <= 0)
    throw ZeroArgument("edge triple requires U > 0 and V > 0");
}

// W*U/V as a rational exponent bound on the X^(1/U) grid of z.
Rat edge_bound(const EdgeTriple& t) { return rat(t.W * t.U, t.V); }

}  // namespace

Series Series::zero_truncated(const ExtRat& tau) {
  return from_terms(1, {}, tau);
}

Series Series::monomial(const Num& c, const Rat& e) {
  long den = rat_den_l(e);
  long num = rat_num_l(e);
  return from_terms(den, {{num, c}}, ExtRat::pos_inf());
}

Series Series::from_terms(long ram, std::map<long, Num> terms,
                          const ExtRat& tau) {
  assert(ram >= 1);
  assert(!tau.is_neg_inf());
  Series s;
  s.ram_ = ram;
  s.tau_ = tau;
  for (auto& [i, c] : terms) {
    if (ExtRat(rat(i, ram)) >= tau) continue;
    if (c.is_zero()) continue;
    s.c_.emplace(i, std::move(c));
  }
  if (s.c_.empty()) {
    s.ram_ = 1;
    return s;
  }
  long g = s.ram_;
  for (const auto& [i, c] : s.c_) g = std::gcd(g, std::abs(i));
  if (g > 1) {
    std::map<long, Num> re;
    for (auto& [i, c] : s.c_) re.emplace(i / g, std::move(c));
    s.c_ = std::move(re);
    s.ram_ /= g;
  }
  return s;
}

ExtRat Series::ord_bound() const {
  if (c_.empty()) return tau_;
  return ExtRat(rat(c_.begin()->first, ram_));
}

ExtRat Series::ord_x() const {
  if (c_.empty()) {
    if (is_exact()) return ExtRat::pos_inf();
    throw PrecisionExhausted("ord_x undetermined: zero to the budget");
  }
  return ExtRat(rat(c_.begin()->first, ram_));
}

Num Series::coeff_at(const Rat& e) const {
  if (ExtRat(e) >= tau_)
    throw PrecisionExhausted("coeff_at beyond the truncation budget");
  Rat scaled = e * ram_;
  if (!rat_is_int(scaled)) return Num();
  long key = rat_num_l(scaled);
  auto it = c_.find(key);
  return it == c_.end() ? Num() : it->second;
}

Num Series::lead_coeff() const {
  if (c_.empty()) {
    if (is_exact()) throw ZeroArgument("lead_coeff of the zero series");
    throw PrecisionExhausted("lead_coeff undetermined: zero to the budget");
  }
  return c_.begin()->second;
}

std::vector<std::pair<Rat, Num>> Series::terms() const {
  std::vector<std::pair<Rat, Num>> out;
  out.reserve(c_.size());
  for (const auto& [i, c] : c_) out.emplace_back(rat(i, ram_), c);
  return out;
}

std::string Series::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [i, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*X^(" << rat_str(rat(i, ram_)) << ')';
  }
  if (first) os << '0';
  os << " | " << tau_.str() << '}';
  return os.str();
}

Series operator+(const Series& a, const Series& b) {
  long L = std::lcm(a.ram(), b.ram());
  ExtRat tau = min(a.trunc(), b.trunc());
  std::map<long, Num> m;
  long fa = L / a.ram();
  for (const auto& [i, c] : a.raw()) m[i * fa] = c;
  long fb = L / b.ram();
  for (const auto& [i, c] : b.raw()) {
    auto [it, fresh] = m.emplace(i * fb, c);
    if (!fresh) it->second = it->second + c;
  }
  return Series::from_terms(L, std::move(m), tau);
}

Series operator-(const Series& a) {
  std::map<long, Num> m;
  for (const auto& [i, c] : a.raw()) m.emplace(i, -c);
  return Series::from_terms(a.ram(), std::move(m), a.trunc());
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  ExtRat tau = min(a.trunc() + b.ord_bound(), b.trunc() + a.ord_bound());
  long L = std::lcm(a.ram(), b.ram());
  long fa = L / a.ram();
  long fb = L / b.ram();
  std::map<long, Num> m;
  for (const auto& [i, ci] : a.raw())
    for (const auto& [j, cj] : b.raw()) {
      long key = i * fa + j * fb;
      if (ExtRat(rat(key, L)) >= tau) continue;
      auto [it, fresh] = m.emplace(key, Num());
      (void)fresh;
      it->second = it->second + ci * cj;
    }
  return Series::from_terms(L, std::move(m), tau);
}

Series operator*(const Num& s, const Series& a) {
  if (s.is_zero()) return Series();
  std::map<long, Num> m;
  for (const auto& [i, c] : a.raw()) m.emplace(i, s * c);
  return Series::from_terms(a.ram(), std::move(m), a.trunc());
}

Series mul_monomial(const Series& a, const Num& c, const Rat& e) {
  if (c.is_zero()) return Series();
  long L = std::lcm(a.ram(), rat_den_l(e));
  long fa = L / a.ram();
  long sh = rat_num_l(e) * (L / rat_den_l(e));
  std::map<long, Num> m;
  for (const auto& [i, ci] : a.raw()) m.emplace(i * fa + sh, c * ci);
  return Series::from_terms(L, std::move(m), a.trunc() + ExtRat(e));
}

Series truncate(const Series& a, const ExtRat& tau) {
  return Series::from_terms(a.ram(), a.raw(), min(a.trunc(), tau));
}

Series invert(const Series& a, const ExtRat& budget) {
  if (!a.has_terms()) {
    if (a.is_exact_zero()) throw DivisionByZero("invert of the zero series");
    throw PrecisionExhausted("invert: unit undetermined to the budget");
  }
  Rat o = a.ord_x().value();
  Num u = a.lead_coeff();
  if (a.raw().size() == 1 && a.is_exact())
    return Series::monomial(u.inverse(), Rat(-o));
  if (budget.is_pos_inf() && a.is_exact())
    throw PrecisionExhausted(
        "invert: a non-monomial exact unit needs a finite budget");
  // a = u X^o (1 + w) with ord(w) > 0; 1/(1+w) = sum (-w)^k.
  Series w = mul_monomial(a, u.inverse(), Rat(-o)) - Series::constant(Num(1));
  // The attainable core budget is w's own budget; the geometric series below
  // terminates once the powers clear it.
  ExtRat core_budget = min(budget + ExtRat(o), w.trunc());
  w = truncate(w, core_budget);
  Series acc = Series::constant(Num(1));
  Series term = Series::constant(Num(1));
  Series nw = -w;
  for (int guard = 0; guard < 100000; ++guard) {
    term = truncate(term * nw, core_budget);
    if (!term.has_terms()) break;
    acc = acc + term;
  }
  acc = truncate(acc, core_budget);
  return mul_monomial(acc, u.inverse(), Rat(-o));
}

Series substitute_pow(const Series& a, long V) {
  assert(V >= 1);
  std::map<long, Num> m;
  for (const auto& [i, c] : a.raw()) m.emplace(i * V, c);
  ExtRat tau = a.trunc().is_finite() ? ExtRat(Rat(a.trunc().value() * V))
                                     : a.trunc();
  return Series::from_terms(a.ram(), std::move(m), tau);
}

Series substitute_root(const Series& a, long k) {
  assert(k >= 1);
  ExtRat tau = a.trunc().is_finite() ? ExtRat(Rat(a.trunc().value() / k))
                                     : a.trunc();
  return Series::from_terms(a.ram() * k, a.raw(), tau);
}

Series rescale(const Series& a, const Num& c) {
  if (a.ram() != 1)
    throw Error("rescale requires integral support");
  std::map<long, Num> m;
  for (const auto& [i, ci] : a.raw()) m.emplace(i, c.pow(i) * ci);
  return Series::from_terms(1, std::move(m), a.trunc());
}

Series pow(const Series& a, long k) {
  assert(k >= 0);
  Series r = Series::constant(Num(1));
  for (long j = 0; j < k; ++j) r = r * a;
  return r;
}

Series derivative_x(const Series& a) {
  std::map<long, Num> m;
  for (const auto& [i, c] : a.raw())
    m.emplace(i - a.ram(), Num(rat(i, a.ram())) * c);
  ExtRat tau = a.trunc().is_finite()
                   ? ExtRat(Rat(a.trunc().value() - 1))
                   : a.trunc();
  return Series::from_terms(a.ram(), std::move(m), tau);
}

bool edge_contains(const Series& z, const EdgeTriple& t) {
  check_triple(t);
  Rat b = edge_bound(t);
  if (z.trunc() < ExtRat(b))
    throw PrecisionExhausted("edge test needs the support below W*U/V");
  if (z.ram() != 1) return false;
  for (const auto& [i, c] : z.raw()) {
    if (Rat(i) >= b) break;
    if ((i * t.V) % t.U != 0) return false;
  }
  return true;
}

Series trunc_dagger(const Series& z, const EdgeTriple& t) {
  if (!edge_contains(z, t)) throw NotOnEdge();
  Rat b = edge_bound(t);
  std::map<long, Num> m;
  for (const auto& [i, c] : z.raw()) {
    if (Rat(i) >= b) break;
    m.emplace(i * t.V / t.U, c);
  }
  return Series::from_terms(1, std::move(m), ExtRat::pos_inf());
}

Series trunc_dagger_star(const Series& z, const EdgeTriple& t) {
  Series d = trunc_dagger(z, t);
  Rat b = edge_bound(t);
  if (!rat_is_int(b)) return d;
  if (z.trunc() <= ExtRat(b))
    throw PrecisionExhausted("boundary coefficient undetermined");
  Num cb = z.coeff_at(b);
  if (cb.is_zero()) return d;
  return d + Series::monomial(cb, Rat(t.W));
}

std::pair<Series, EdgeTriple> deform(const Series& z, const EdgeTriple& t) {
  return {trunc_dagger(z, t), t};
}

}  // namespace merocurve
