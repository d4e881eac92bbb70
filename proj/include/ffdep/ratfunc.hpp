#pragma once

#include "ffdep/poly.hpp"

#include <string>
#include <vector>

namespace ffdep {

/// f/g in Q(X), stored as f, g in Z[X] with gcd(f, g) = 1, gcd of all
/// coefficients of f and g equal to 1, and lc(g) > 0.
class RatFunc {
 public:
  RatFunc() : num_(), den_(IntPoly::constant(1)) {}
  RatFunc(IntPoly num, IntPoly den);
  explicit RatFunc(const IntPoly& p) : RatFunc(p, IntPoly::constant(1)) {}

  static RatFunc x() { return RatFunc(IntPoly::x()); }
  static RatFunc constant(const BigRat& c);

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// max(deg num, deg den).
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Integer power; negative exponents invert (error on zero).
  RatFunc pow(long e) const;
  /// this(inner(X)).
  RatFunc compose(const RatFunc& inner) const;
  /// Value at a rational point; DomainError at a pole.
  BigRat evaluate(const BigRat& x) const;

  std::string to_string() const;

 private:
  IntPoly num_;
  IntPoly den_;
};

/// Parse an expression in X with integers, + - * / ^ and parentheses,
/// e.g. "X/(X+1)", "(X-1)^2*(X+2)", "1/2*X^3". Exponents are integers.
RatFunc parse_ratfunc(const std::string& text);
/// Comma-separated list of expressions at parenthesis depth zero.
std::vector<RatFunc> parse_ratfunc_list(const std::string& text);
BigRat parse_rational(const std::string& text);

/// Homogenized substitution: sum_i c_i u^i v^(D-i) for polynomial p.
IntPoly homogeneous_compose(const IntPoly& p, const IntPoly& u, const IntPoly& v, int D);

}  // namespace ffdep
