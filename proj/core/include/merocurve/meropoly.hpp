#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merocurve/algebraic.hpp"
#include "merocurve/puiseux.hpp"

namespace merocurve {

// Polynomial in Y whose coefficients are Puiseux series in X. Stored
// coefficients are never the exact zero series; an empty series with a finite
// budget may be stored and records "O(X^tau)" knowledge for that Y-power.
class MPoly {
 public:
  MPoly() = default;  // the zero polynomial

  static MPoly y() { return y_pow(1); }
  static MPoly y_pow(long j);
  static MPoly constant(Series a);
  static MPoly from_coeffs(std::map<long, Series> m);

  const std::map<long, Series>& coeffs() const { return c_; }
  // Coefficient of Y^j; the exact zero series when absent.
  Series coeff(long j) const;
  bool is_exact_zero() const { return c_.empty(); }

  std::string str() const;

 private:
  std::map<long, Series> c_;
};

MPoly operator+(const MPoly& a, const MPoly& b);
MPoly operator-(const MPoly& a, const MPoly& b);
MPoly operator-(const MPoly& a);
MPoly operator*(const MPoly& a, const MPoly& b);
MPoly operator*(const Series& s, const MPoly& a);
MPoly operator*(const Num& s, const MPoly& a);
MPoly mul_y_pow(const MPoly& a, long k);  // a * Y^k, k >= 0
MPoly pow(const MPoly& a, long k);        // k >= 0

// Minimal X-exponent over all coefficients; +inf for the zero polynomial.
// Throws PrecisionExhausted when a truncated coefficient could undercut the
// best stored exponent.
ExtRat ord_x(const MPoly& g);
// Largest Y-power with a nonzero coefficient. Throws ZeroPolynomial for the
// zero polynomial and PrecisionExhausted when the top stored coefficient is
// empty but truncated.
long deg_y(const MPoly& g);

// Support views; these need exact knowledge and throw PrecisionExhausted on
// truncated coefficients.
std::vector<Rat> supp_x(const MPoly& g);
std::vector<long> supp_y(const MPoly& g);
std::vector<std::pair<Rat, long>> supp_xy(const MPoly& g);

// Coefficient of X^ord_x as a polynomial in Y over k; nonzero by definition.
KPoly inco_x(const MPoly& g);
// Coefficient of Y^deg_y.
Series deco_y(const MPoly& g);

// Minimal i+j over the support, and the terms attaining it.
ExtRat ord_total(const MPoly& g);
MPoly info(const MPoly& g);

// Maximal i+j and its terms; defined only when every coefficient is a
// Laurent polynomial (exact, integral support). Throws PrecisionExhausted
// otherwise.
long deg_total(const MPoly& g);
MPoly defo(const MPoly& g);

struct Views {
  ExtRat ord_x = ExtRat::pos_inf();
  std::optional<long> deg_y;  // empty for the zero polynomial
  std::vector<Rat> supp_x;
  std::vector<long> supp_y;
  std::vector<std::pair<Rat, long>> supp_xy;
  KPoly inco_x;
  Series deco_y;
  ExtRat ord_total = ExtRat::pos_inf();
  MPoly info;
  std::optional<long> deg_total;  // set only for Laurent-polynomial input
  MPoly defo;
};
// All views at once; deg_total/defo stay empty when undefined.
Views views(const MPoly& g);

// True when every coefficient is exact with integral support.
bool is_laurent(const MPoly& g);

MPoly partial_x(const MPoly& g);
MPoly partial_y(const MPoly& g);
// F_X G_Y - G_X F_Y.
MPoly jacobian(const MPoly& F, const MPoly& G);

// g(X^V, Y) for V >= 1.
MPoly subst_x_pow(const MPoly& g, long V);
// g(X^(1/k), Y).
MPoly subst_x_root(const MPoly& g, long k);

// Y-resultant via the Sylvester determinant; requires Laurent-polynomial
// coefficients on both sides. Zero when either argument is zero and the
// other has positive degree.
Series resultant_y(const MPoly& f, const MPoly& g);

// ord_X Res_Y(f, g) for exact Laurent inputs. Throws ZeroArgument when g is
// zero or shares a factor with f (infinite intersection).
Rat int_mult(const MPoly& f, const MPoly& g);

// H(X^V, z|(X) + X^W Y) where z| is the edge truncation of z along t.
// Coefficient budgets propagate term by term from H and z.
MPoly compose_deformation(const MPoly& H, const Series& z, const EdgeTriple& t);

// H(X^n, z(X)).
Series eval_root(const MPoly& H, long n, const Series& z);

}  // namespace merocurve
