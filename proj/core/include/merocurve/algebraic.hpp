#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merocurve/errors.hpp"
#include "merocurve/rational.hpp"

namespace merocurve {

class Field;

// Element of the coefficient field: either a plain rational (level 0) or a
// reduced polynomial in the generators of a Field tower. Representations are
// kept canonical: reduced modulo the tower's minimal polynomials, trailing
// zero coefficients stripped, degree-0 wrappers collapsed to the level below.
//
// Zero tests are decisions: testing a zero divisor shrinks the tower modulus
// so that the tested element becomes invertible (the element is kept nonzero).
// All later answers are consistent with every decision taken so far.
class Num {
 public:
  Num() : q_(0) {}
  Num(long v) : q_(v) {}
  Num(int v) : q_(v) {}
  Num(const Rat& v) : q_(v) {}

  int level() const;
  bool is_rat() const { return level() == 0; }
  const Rat& rat() const;
  Field* field() const { return fld_; }

  bool is_zero() const;
  bool is_one() const;
  Num inverse() const;
  Num pow(long e) const;

  friend Num operator+(const Num& a, const Num& b);
  friend Num operator-(const Num& a, const Num& b);
  friend Num operator*(const Num& a, const Num& b);
  friend Num operator/(const Num& a, const Num& b);
  Num operator-() const;
  Num& operator+=(const Num& o);
  Num& operator-=(const Num& o);
  Num& operator*=(const Num& o);
  Num& operator/=(const Num& o);

  // Semantic equality (zero test of the difference; may take tower decisions).
  friend bool operator==(const Num& a, const Num& b);
  friend bool operator!=(const Num& a, const Num& b) { return !(a == b); }

  // Re-reduces the stored representation after tower updates; the value is
  // unchanged. Called internally before any representation access.
  void sync() const;

  // Dense representation over the level below (level() >= 1 only).
  std::vector<Num> rep() const;

  // Canonical printing: rationals as "p/q", tower elements recursively as
  // "[c0,...,cd]@level".
  std::string str() const;

  // Total order on canonical representations (not a numeric order); used for
  // deterministic sorting and registry keys.
  friend int rep_cmp(const Num& a, const Num& b);

 private:
  friend class Field;
  Num(Field* f, int lvl, std::vector<Num> c);

  Field* fld_ = nullptr;
  mutable int lvl_ = 0;
  mutable Rat q_;
  mutable std::vector<Num> c_;
  mutable std::uint64_t ver_ = 0;
};

// Dense univariate polynomial over Num: tower moduli, face polynomials and
// minimal-polynomial manipulation all use this type.
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(std::vector<Num> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static KPoly constant(const Num& c) { return KPoly({c}); }
  static KPoly variable() { return KPoly({Num(0), Num(1)}); }

  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Num& operator[](int i) const;
  const std::vector<Num>& coeffs() const { return c_; }
  bool is_monic() const;

  Num eval(const Num& x) const;
  KPoly derivative() const;
  KPoly monic() const;

  friend KPoly operator+(const KPoly& a, const KPoly& b);
  friend KPoly operator-(const KPoly& a, const KPoly& b);
  friend KPoly operator*(const KPoly& a, const KPoly& b);
  KPoly operator-() const;
  friend KPoly operator*(const Num& s, const KPoly& p);

  // Strips (semantically) zero leading coefficients.
  void normalize();
  std::string str() const;

 private:
  std::vector<Num> c_;
};

// Quotient and remainder by a structurally monic divisor.
std::pair<KPoly, KPoly> divrem_monic(const KPoly& a, const KPoly& b);

// Monic gcd by the Euclidean algorithm; zero tests on the way may take tower
// decisions.
KPoly kpoly_gcd_monic(KPoly a, KPoly b);

// p / gcd(p, p'), made monic.
KPoly kpoly_squarefree_part(const KPoly& p);

// Lazily grown tower of algebraic extensions over Q, shared by every Num of
// one computation. Moduli only ever shrink (each zero-divisor decision keeps
// the branch where the tested element is invertible), so any representation
// can be re-reduced to the current tower state.
class Field {
 public:
  static std::shared_ptr<Field> make();

  int depth() const { return static_cast<int>(levels_.size()); }
  std::uint64_t version() const { return version_; }
  // level in 1..depth()
  const KPoly& level_modulus(int level) const;
  // True when the modulus is known irreducible over the subfield below it
  // (then zero tests at that level skip the divisor check).
  bool level_certified(int level) const;

  // A root of p (monic, squarefree, deg >= 1, coefficients in this tower).
  // Prefers roots already present: rational candidates, generators and
  // registered roots of unity / radicals are probed before the tower grows.
  Num adjoin_root(const KPoly& p);

  // A primitive n-th root of unity (n >= 1), reused across calls.
  Num primitive_root_of_unity(long n);

  // The generator of the given level (1..depth()).
  Num gen(int level);

 private:
  friend class Num;
  friend Num operator+(const Num& a, const Num& b);
  friend Num operator*(const Num& a, const Num& b);
  Field() = default;

  struct Level {
    KPoly mod;
    bool certified = false;
  };

  // --- helpers used by Num arithmetic (definitions in algebraic.cpp)
  void refresh(const Num& a) const;
  Num make(int lvl, std::vector<Num> c);
  void reduce(int lvl, std::vector<Num>& c);
  bool decide_nonzero(const Num& a);   // true if a != 0 (may split)
  Num invert(const Num& a);
  void shrink_modulus(int lvl, const KPoly& keep);

  std::optional<Num> probe_roots(const KPoly& p);
  Num adjoin_rational_binomial(long n, Rat c);
  void register_unity(long n, const Num& z);

  std::vector<Level> levels_;
  std::uint64_t version_ = 1;
  std::map<long, Num> unity_;
  std::map<std::pair<long, std::string>, Num> radicals_;
};

using FieldPtr = std::shared_ptr<Field>;

int rep_cmp(const Num& a, const Num& b);

// The n-th cyclotomic polynomial over the rationals (cached internally).
KPoly cyclotomic(long n);

}  // namespace merocurve
