#pragma once

#include <stdexcept>
#include <string>

namespace merocurve {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Division by an exact zero (field element or series unit).
class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what = "division by zero")
      : Error(what) {}
};

// adjoin_root requires a squarefree minimal polynomial; gcd/squarefree
// preconditions elsewhere report through the same type.
class NotSquarefree : public Error {
 public:
  explicit NotSquarefree(const std::string& what = "polynomial is not squarefree")
      : Error(what) {}
};

// A monic polynomial was required.
class NotMonic : public Error {
 public:
  explicit NotMonic(const std::string& what = "polynomial is not monic")
      : Error(what) {}
};

// A query needed terms beyond the truncation budget of a series.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what = "truncation budget exhausted")
      : Error(what) {}
};

// An edge-triple operation was applied to a series not lying on that edge.
class NotOnEdge : public Error {
 public:
  explicit NotOnEdge(const std::string& what = "series does not lie on the edge")
      : Error(what) {}
};

// A view or operation received the zero polynomial/series where a nonzero
// argument is required.
class ZeroArgument : public Error {
 public:
  explicit ZeroArgument(const std::string& what = "argument is zero")
      : Error(what) {}
};

// factor() of the zero polynomial.
class ZeroPolynomial : public Error {
 public:
  explicit ZeroPolynomial(const std::string& what = "zero polynomial")
      : Error(what) {}
};

// An operation requiring deg_Y >= 1 received an element of k((X)).
class ConstantInput : public Error {
 public:
  explicit ConstantInput(const std::string& what = "input is constant in Y")
      : Error(what) {}
};

// Adaptive refinement hit the precision cap without reaching a decision.
class PrecisionCapExceeded : public Error {
 public:
  explicit PrecisionCapExceeded(const std::string& what = "precision cap exceeded")
      : Error(what) {}
};

// The derivative-factorization entry point requires a squarefree input with
// chi >= 1; reported when the input has a repeated or constant factor shape.
class MultipleFactors : public Error {
 public:
  explicit MultipleFactors(const std::string& what = "input has multiple factors")
      : Error(what) {}
};

// The jacobian entry point requires G != 0.
class ZeroG : public Error {
 public:
  explicit ZeroG(const std::string& what = "second argument is zero")
      : Error(what) {}
};

// Expression parsing failed; position() is the byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// The expression grammar forbids negative exponents on Y.
class NegativeYExponent : public Error {
 public:
  explicit NegativeYExponent(const std::string& what = "negative exponent on Y")
      : Error(what) {}
};

}  // namespace merocurve
