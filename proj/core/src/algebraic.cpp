#include "merocurve/algebraic.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

namespace merocurve {

namespace {

// Structural zero: definitely the zero element. A nonzero representation can
// still be a zero divisor at an uncertified level; semantic tests go through
// Num::is_zero which takes the tower decision.
bool is_struct_zero(const Num& a) { return a.level() == 0 && a.rat() == 0; }

Field* common_field(const Num& a, const Num& b) {
  Field* f = a.field();
  Field* g = b.field();
  if (f && g) assert(f == g && "operands belong to different towers");
  return f ? f : g;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// True if c is the p-th power of a rational; on success stores the root.
bool rat_root(const Rat& c, long p, Rat* out) {
  if (c == 0) {
    *out = 0;
    return true;
  }
  bool neg = c < 0;
  if (neg && p % 2 == 0) return false;
  mpz_class num = abs(c.get_num());
  mpz_class den = c.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(p)))
    return false;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p)))
    return false;
  if (neg) rn = -rn;
  *out = Rat(rn, rd);
  out->canonicalize();
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Num

Num::Num(Field* f, int lvl, std::vector<Num> c)
    : fld_(f), lvl_(lvl), q_(0), c_(std::move(c)), ver_(f->version()) {}

void Num::sync() const {
  if (fld_ == nullptr || lvl_ == 0) return;
  if (ver_ == fld_->version()) return;
  std::vector<Num> c = std::move(c_);
  c_.clear();
  for (auto& x : c) x.sync();
  Num r = fld_->make(lvl_, std::move(c));
  ver_ = fld_->version();
  if (r.lvl_ == 0) {
    lvl_ = 0;
    q_ = r.q_;
    c_.clear();
  } else {
    lvl_ = r.lvl_;
    c_ = std::move(r.c_);
  }
}

int Num::level() const {
  sync();
  return lvl_;
}

const Rat& Num::rat() const {
  sync();
  assert(lvl_ == 0 && "rat() requires a level-0 element");
  return q_;
}

bool Num::is_zero() const {
  sync();
  if (lvl_ == 0) return q_ == 0;
  return !fld_->decide_nonzero(*this);
}

bool Num::is_one() const {
  sync();
  return lvl_ == 0 && q_ == 1;
}

Num Num::inverse() const {
  sync();
  if (lvl_ == 0) {
    if (q_ == 0) throw DivisionByZero();
    return Num(Rat(1 / q_));
  }
  return fld_->invert(*this);
}

Num Num::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Num result(1);
  Num base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Num operator+(const Num& a, const Num& b) {
  a.sync();
  b.sync();
  if (a.lvl_ == 0 && b.lvl_ == 0) return Num(Rat(a.q_ + b.q_));
  Field* F = common_field(a, b);
  if (a.lvl_ == b.lvl_) {
    std::vector<Num> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r[i] = a.c_[i] + b.c_[i];
      else if (i < a.c_.size())
        r[i] = a.c_[i];
      else
        r[i] = b.c_[i];
    }
    return F->make(a.lvl_, std::move(r));
  }
  const Num& hi = a.lvl_ > b.lvl_ ? a : b;
  const Num& lo = a.lvl_ > b.lvl_ ? b : a;
  std::vector<Num> r = hi.c_;
  r[0] = r[0] + lo;
  return F->make(hi.lvl_, std::move(r));
}

Num Num::operator-() const {
  sync();
  if (lvl_ == 0) return Num(Rat(-q_));
  std::vector<Num> r = c_;
  for (auto& x : r) x = -x;
  return fld_->make(lvl_, std::move(r));
}

Num operator-(const Num& a, const Num& b) { return a + (-b); }

Num operator*(const Num& a, const Num& b) {
  a.sync();
  b.sync();
  if (a.lvl_ == 0 && b.lvl_ == 0) return Num(Rat(a.q_ * b.q_));
  if ((a.lvl_ == 0 && a.q_ == 0) || (b.lvl_ == 0 && b.q_ == 0)) return Num();
  Field* F = common_field(a, b);
  if (a.lvl_ == b.lvl_) {
    std::vector<Num> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return F->make(a.lvl_, std::move(r));
  }
  const Num& hi = a.lvl_ > b.lvl_ ? a : b;
  const Num& lo = a.lvl_ > b.lvl_ ? b : a;
  std::vector<Num> r = hi.c_;
  for (auto& x : r) x = x * lo;
  return F->make(hi.lvl_, std::move(r));
}

Num operator/(const Num& a, const Num& b) { return a * b.inverse(); }

Num& Num::operator+=(const Num& o) { return *this = *this + o; }
Num& Num::operator-=(const Num& o) { return *this = *this - o; }
Num& Num::operator*=(const Num& o) { return *this = *this * o; }
Num& Num::operator/=(const Num& o) { return *this = *this / o; }

bool operator==(const Num& a, const Num& b) { return (a - b).is_zero(); }

std::vector<Num> Num::rep() const {
  sync();
  assert(lvl_ > 0 && "rep() requires a tower element");
  return c_;
}

std::string Num::str() const {
  sync();
  if (lvl_ == 0) return q_.get_str();
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i].str();
  }
  os << "]@" << lvl_;
  return os.str();
}

int rep_cmp(const Num& a, const Num& b) {
  a.sync();
  b.sync();
  if (a.lvl_ != b.lvl_) return a.lvl_ < b.lvl_ ? -1 : 1;
  if (a.lvl_ == 0) return static_cast<int>(cmp(a.q_, b.q_));
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (int c = rep_cmp(a.c_[i], b.c_[i])) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// KPoly

const Num& KPoly::operator[](int i) const {
  assert(0 <= i && i <= deg());
  return c_[static_cast<std::size_t>(i)];
}

bool KPoly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

void KPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Num KPoly::eval(const Num& x) const {
  Num r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

KPoly KPoly::derivative() const {
  if (c_.size() <= 1) return KPoly();
  std::vector<Num> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r[i - 1] = Num(static_cast<long>(i)) * c_[i];
  return KPoly(std::move(r));
}

KPoly KPoly::monic() const {
  if (is_zero() || c_.back().is_one()) return *this;
  return c_.back().inverse() * *this;
}

KPoly operator+(const KPoly& a, const KPoly& b) {
  std::vector<Num> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.c_.size()) r[i] = r[i] + a.c_[i];
    if (i < b.c_.size()) r[i] = r[i] + b.c_[i];
  }
  return KPoly(std::move(r));
}

KPoly KPoly::operator-() const {
  std::vector<Num> r = c_;
  for (auto& x : r) x = -x;
  return KPoly(std::move(r));
}

KPoly operator-(const KPoly& a, const KPoly& b) { return a + (-b); }

KPoly operator*(const KPoly& a, const KPoly& b) {
  if (a.is_zero() || b.is_zero()) return KPoly();
  std::vector<Num> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
  return KPoly(std::move(r));
}

KPoly operator*(const Num& s, const KPoly& p) {
  std::vector<Num> r = p.coeffs();
  for (auto& x : r) x = s * x;
  return KPoly(std::move(r));
}

std::string KPoly::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i].str();
  }
  os << ')';
  return os.str();
}

std::pair<KPoly, KPoly> divrem_monic(const KPoly& a, const KPoly& b) {
  assert(b.is_monic() && "divisor must be monic");
  int db = b.deg();
  std::vector<Num> r = a.coeffs();
  if (static_cast<int>(r.size()) - 1 < db) return {KPoly(), a};
  std::vector<Num> q(r.size() - static_cast<std::size_t>(db));
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    Num top = r[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i - db)] = top;
    if (is_struct_zero(top)) continue;
    for (int j = 0; j < db; ++j)
      r[static_cast<std::size_t>(i - db + j)] =
          r[static_cast<std::size_t>(i - db + j)] - top * b[j];
    r[static_cast<std::size_t>(i)] = Num();
  }
  r.resize(static_cast<std::size_t>(db));
  return {KPoly(std::move(q)), KPoly(std::move(r))};
}

KPoly kpoly_gcd_monic(KPoly a, KPoly b) {
  a.normalize();
  b.normalize();
  while (!b.is_zero()) {
    b = b.monic();
    auto [q, r] = divrem_monic(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
    b.normalize();
  }
  return a.monic();
}

KPoly kpoly_squarefree_part(const KPoly& p) {
  KPoly g = kpoly_gcd_monic(p, p.derivative());
  if (g.deg() <= 0) return p.monic();
  auto [q, r] = divrem_monic(p, g);
  assert(r.is_zero());
  return q.monic();
}

// ---------------------------------------------------------------------------
// Field

FieldPtr Field::make() { return std::shared_ptr<Field>(new Field()); }

const KPoly& Field::level_modulus(int level) const {
  assert(1 <= level && level <= depth());
  return levels_[static_cast<std::size_t>(level - 1)].mod;
}

bool Field::level_certified(int level) const {
  assert(1 <= level && level <= depth());
  return levels_[static_cast<std::size_t>(level - 1)].certified;
}

Num Field::gen(int level) {
  assert(1 <= level && level <= depth());
  return make(level, {Num(0), Num(1)});
}

void Field::reduce(int lvl, std::vector<Num>& c) {
  const KPoly& m = levels_[static_cast<std::size_t>(lvl - 1)].mod;
  int d = m.deg();
  while (static_cast<int>(c.size()) > d) {
    Num top = c.back();
    c.pop_back();
    if (is_struct_zero(top)) continue;
    std::size_t off = c.size() - static_cast<std::size_t>(d);
    for (int j = 0; j < d; ++j)
      c[off + static_cast<std::size_t>(j)] =
          c[off + static_cast<std::size_t>(j)] - top * m[j];
  }
}

Num Field::make(int lvl, std::vector<Num> c) {
  reduce(lvl, c);
  while (!c.empty() && is_struct_zero(c.back())) c.pop_back();
  if (c.empty()) return Num();
  if (c.size() == 1) return c[0];
  return Num(this, lvl, std::move(c));
}

void Field::shrink_modulus(int lvl, const KPoly& keep) {
  assert(keep.deg() >= 1);
  levels_[static_cast<std::size_t>(lvl - 1)].mod = keep;
  ++version_;
}

bool Field::decide_nonzero(const Num& a0) {
  Num a = a0;
  for (;;) {
    a.sync();
    if (a.level() == 0) return a.rat() != 0;
    int L = a.lvl_;
    if (level_certified(L)) return true;
    std::uint64_t v0 = version_;
    KPoly g = kpoly_gcd_monic(KPoly(a.c_), level_modulus(L));
    if (g.deg() == 0) return true;
    // Splits below this level during the gcd invalidate g as a divisor of
    // the current modulus; recompute from the fresh state.
    if (version_ != v0) continue;
    assert(g.deg() < level_modulus(L).deg());
    auto [q, r] = divrem_monic(level_modulus(L), g);
    assert(r.is_zero());
    shrink_modulus(L, q);
  }
}

Num Field::invert(const Num& a0) {
  Num a = a0;
  for (;;) {
    a.sync();
    if (a.level() == 0) {
      if (a.rat() == 0) throw DivisionByZero();
      return Num(Rat(1 / a.rat()));
    }
    int L = a.lvl_;
    std::uint64_t v0 = version_;
    // Bezout run: maintain s with s * a == r (mod modulus).
    KPoly r0 = level_modulus(L);
    KPoly r1(a.c_);
    KPoly s0, s1 = KPoly::constant(Num(1));
    while (!r1.is_zero()) {
      Num lc = r1.coeffs().back();
      Num li = lc.inverse();
      r1 = li * r1;
      s1 = li * s1;
      auto [q, r2] = divrem_monic(r0, r1);
      KPoly s2 = s0 - q * s1;
      r0 = std::move(r1);
      s0 = std::move(s1);
      r1 = std::move(r2);
      s1 = std::move(s2);
      r1.normalize();
    }
    if (r0.deg() == 0) {
      // r0 is monic degree 0, i.e. 1; s0 * a == 1 (mod modulus) and the
      // identity survives any splits taken during the run.
      std::vector<Num> c = s0.coeffs();
      return make(L, std::move(c));
    }
    // Proper divisor found: keep the branch where a is invertible, unless
    // the tower moved under us, in which case recompute.
    if (version_ != v0) continue;
    auto [q, r] = divrem_monic(level_modulus(L), r0);
    assert(r.is_zero());
    shrink_modulus(L, q);
  }
}

KPoly cyclotomic(long n) {
  assert(n >= 1);
  static std::map<long, KPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Num> v(static_cast<std::size_t>(n) + 1);
  v[0] = Num(-1);
  v[static_cast<std::size_t>(n)] = Num(1);
  KPoly p(std::move(v));
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = divrem_monic(p, cyclotomic(d));
    assert(r.is_zero());
    p = std::move(q);
  }
  cache[n] = p;
  return p;
}

void Field::register_unity(long n, const Num& z) {
  if (unity_.find(n) == unity_.end()) unity_[n] = z;
}

std::optional<Num> Field::probe_roots(const KPoly& p) {
  std::vector<Num> cands = {Num(0),         Num(1),  Num(-1),
                            Num(2),         Num(-2), Num(Rat(1, 2)),
                            Num(Rat(-1, 2))};
  for (int L = 1; L <= depth(); ++L) cands.push_back(gen(L));
  for (const auto& [m, z] : unity_) {
    Num pw = z;
    for (long j = 1; j < std::min(m, 24L); ++j) {
      cands.push_back(pw);
      pw = pw * z;
    }
  }
  for (const auto& [key, th] : radicals_) {
    Num pw = th;
    for (long j = 1; j < std::min(key.first, 8L) + 1; ++j) {
      cands.push_back(pw);
      cands.push_back(-pw);
      pw = pw * th;
    }
  }
  for (const auto& cand : cands)
    if (p.eval(cand).is_zero()) return cand;
  return std::nullopt;
}

Num Field::adjoin_rational_binomial(long n, Rat c) {
  assert(c != 0);
  // Reduce the exponent while c is a p-th power for a prime p dividing n.
  for (bool changed = true; changed && n > 1;) {
    changed = false;
    for (long p : prime_factors(n)) {
      Rat root;
      if (rat_root(c, p, &root)) {
        n /= p;
        c = root;
        changed = true;
        break;
      }
    }
  }
  if (n == 1) return Num(c);
  auto key = std::make_pair(n, rat_str(c));
  auto it = radicals_.find(key);
  if (it != radicals_.end()) {
    it->second.sync();
    return it->second;
  }
  // Irreducibility over Q after exponent reduction: c is not a p-th power
  // for primes p | n; the one remaining reducible shape is c = -4 d^4 with
  // 4 | n.
  bool certified = depth() == 0;
  if (n % 4 == 0) {
    Rat root;
    if (c < 0 && rat_root(Rat(-c / 4), 4, &root)) certified = false;
  }
  std::vector<Num> mv(static_cast<std::size_t>(n) + 1);
  mv[0] = Num(Rat(-c));
  mv[static_cast<std::size_t>(n)] = Num(1);
  levels_.push_back({KPoly(std::move(mv)), certified});
  ++version_;
  Num theta = gen(depth());
  radicals_[key] = theta;
  if (c == -1) {
    // After reduction the exponent is a power of two and every root of
    // t^n + 1 has multiplicative order exactly 2n.
    register_unity(2 * n, theta);
  }
  return theta;
}

Num Field::adjoin_root(const KPoly& p0) {
  KPoly p = p0;
  p.normalize();
  if (p.deg() < 1) throw ZeroArgument("adjoin_root requires degree >= 1");
  if (!p.is_monic()) throw NotMonic("adjoin_root requires a monic polynomial");
  KPoly g = kpoly_gcd_monic(p, p.derivative());
  if (g.deg() != 0)
    throw NotSquarefree("adjoin_root requires a squarefree polynomial");
  if (p.deg() == 1) return -p[0];

  if (auto probed = probe_roots(p)) return *probed;

  bool all_rat = true;
  for (const auto& x : p.coeffs())
    if (x.level() != 0) all_rat = false;
  bool binom = true;
  for (int i = 1; i < p.deg(); ++i)
    if (!p[i].is_zero()) binom = false;

  if (binom && all_rat) return adjoin_rational_binomial(p.deg(), Rat(-p[0].rat()));

  if (all_rat) {
    for (long m = 1; m <= 128; ++m) {
      if (cyclotomic(m).deg() != p.deg()) continue;
      KPoly phi = cyclotomic(m);
      bool same = true;
      for (int i = 0; i <= p.deg(); ++i)
        if (rep_cmp(phi[i], p[i]) != 0) same = false;
      if (same) {
        levels_.push_back({p, depth() == 0});
        ++version_;
        Num theta = gen(depth());
        register_unity(m, theta);
        return theta;
      }
    }
  }

  if (binom) {
    // Binomial over the tower: reuse a registered root when available.
    Num c = -p[0];
    auto key = std::make_pair(static_cast<long>(p.deg()), c.str());
    auto it = radicals_.find(key);
    if (it != radicals_.end()) {
      it->second.sync();
      return it->second;
    }
    levels_.push_back({p, false});
    ++version_;
    Num theta = gen(depth());
    radicals_[key] = theta;
    return theta;
  }

  levels_.push_back({p, false});
  ++version_;
  return gen(depth());
}

Num Field::primitive_root_of_unity(long n) {
  if (n <= 0) throw ZeroArgument("root of unity order must be positive");
  if (n == 1) return Num(1);
  if (n == 2) return Num(-1);
  auto it = unity_.find(n);
  if (it != unity_.end()) {
    it->second.sync();
    return it->second;
  }
  for (const auto& [m, z] : unity_) {
    if (m % n == 0) {
      Num val = z.pow(m / n);
      unity_[n] = val;
      return val;
    }
  }
  Num theta = adjoin_root(cyclotomic(n));
  unity_[n] = theta;
  return theta;
}

}  // namespace merocurve
