#pragma once

#include <gmpxx.h>

#include <cassert>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace merocurve {

// Exact rational arithmetic. mpq_class keeps values canonical (reduced,
// positive denominator), which the library relies on for printing and
// comparisons.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline long rat_num_l(const Rat& r) {
  assert(r.get_num().fits_slong_p());
  return r.get_num().get_si();
}

inline long rat_den_l(const Rat& r) {
  assert(r.get_den().fits_slong_p());
  return r.get_den().get_si();
}

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

// Largest integer <= r.
inline mpz_class rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Rational with the two infinities adjoined. Orders (ord_x of the zero
// series), degrees (deg_y of zero), truncation budgets and tree levels all
// need one of the endpoints.
class ExtRat {
 public:
  ExtRat() : kind_(Kind::Finite), value_(0) {}
  ExtRat(const Rat& v) : kind_(Kind::Finite), value_(v) {}
  ExtRat(long v) : kind_(Kind::Finite), value_(v) {}
  static ExtRat pos_inf() { return ExtRat(Kind::PosInf); }
  static ExtRat neg_inf() { return ExtRat(Kind::NegInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  const Rat& value() const {
    assert(is_finite());
    return value_;
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::Finite || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ == Kind::NegInf) return b.kind_ != Kind::NegInf;
    if (a.kind_ == Kind::PosInf) return false;
    if (b.kind_ == Kind::PosInf) return true;
    if (b.kind_ == Kind::NegInf) return false;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  // Addition with infinities absorbing; adding opposite infinities is a
  // program error.
  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.is_finite() && b.is_finite()) return ExtRat(Rat(a.value_ + b.value_));
    if (a.is_pos_inf() || b.is_pos_inf()) {
      assert(!a.is_neg_inf() && !b.is_neg_inf());
      return pos_inf();
    }
    return neg_inf();
  }
  friend ExtRat operator-(const ExtRat& a) {
    if (a.is_pos_inf()) return neg_inf();
    if (a.is_neg_inf()) return pos_inf();
    return ExtRat(Rat(-a.value_));
  }
  friend ExtRat operator-(const ExtRat& a, const ExtRat& b) { return a + (-b); }

  friend ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
  friend ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return rat_str(value_);
  }

 private:
  enum class Kind { Finite, PosInf, NegInf };
  explicit ExtRat(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  Rat value_;
};

}  // namespace merocurve
