#pragma once

#include "ffdep/bigint.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ffdep {

/// Dense univariate polynomial over Z. Index i holds the coefficient of X^i;
/// the leading coefficient is nonzero unless the polynomial is zero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, std::size_t degree);
  static IntPoly x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::span<const BigInt> coeffs() const { return coeffs_; }
  /// Coefficient of X^i (zero past the degree).
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  const BigInt& leading() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator*(const BigInt& c, IntPoly a) { return a *= c; }
  bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

  IntPoly pow(unsigned e) const;
  IntPoly derivative() const;
  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// Divide by content and make the leading coefficient positive.
  IntPoly primitive() const;
  /// Divide every coefficient by c, which must divide each exactly.
  IntPoly divexact(const BigInt& c) const;
  BigInt evaluate(const BigInt& x) const;
  BigRat evaluate(const BigRat& x) const;
  /// Residue of each coefficient in [0, m).
  std::vector<std::uint64_t> reduce_mod(std::uint64_t m) const;

  std::string to_string() const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Dense univariate polynomial over Q.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<BigRat> coeffs);
  explicit RatPoly(const IntPoly& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const BigRat> coeffs() const { return coeffs_; }
  BigRat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRat(0); }

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const BigRat& c);
  bool operator==(const RatPoly& o) const { return coeffs_ == o.coeffs_; }

  BigRat evaluate(const BigRat& x) const;
  /// Least common multiple of the coefficient denominators.
  BigInt denominator_lcm() const;
  /// Clear denominators by their LCM, divide by content, force a positive
  /// leading coefficient.
  IntPoly to_primitive() const;
  /// Multiply by the least positive integer that makes every coefficient
  /// integral (no content removal). Returns the polynomial and that factor.
  std::pair<IntPoly, BigInt> to_integral() const;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<BigRat> coeffs_;
};

struct HeightReport {
  BigInt H;                  ///< max |coefficient|
  double h = 0.0;            ///< max(0, log H)
  double mahler_lower = 0.0; ///< 2^{-deg} H
  double mahler_upper = 0.0; ///< sqrt(deg+1) H
};

HeightReport height(const IntPoly& f);
/// max(0, log H(f)) without the Mahler bounds.
double log_height(const IntPoly& f);

/// Sum over i of h(f_i) + deg f_i, the bound on h(prod f_i).
double product_height_bound(std::span<const IntPoly> fs);

/// Res(f, g) = lc(f)^{deg g} prod_{f(a)=0} g(a). Subresultant PRS; inputs
/// must be nonzero.
BigInt resultant(const IntPoly& f, const IntPoly& g);
/// Same value via Bareiss elimination on the Sylvester matrix.
BigInt resultant_sylvester(const IntPoly& f, const IntPoly& g);
/// Exact integer test of |Res(f,g)| <= (sqrt(df+1) H(f))^dg (sqrt(dg+1) H(g))^df.
bool within_hadamard_bound(const BigInt& res, const IntPoly& f, const IntPoly& g);
/// Natural log of the Hadamard bound above.
double log_hadamard_bound(const IntPoly& f, const IntPoly& g);

/// Exact division a / b over Z; throws DomainError if b does not divide a.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);
/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
/// Primitive polynomial with the same distinct complex roots as f, all simple.
IntPoly squarefree_part(const IntPoly& f);

/// Number of common roots of f mod p and g mod p in the algebraic closure,
/// each common root counted with min(mult_f, mult_g).
std::uint64_t common_roots_mod_p(const IntPoly& f, const IntPoly& g, std::uint64_t p);

/// Floating-point Mahler measure from the complex roots.
double mahler_measure_numeric(const IntPoly& f);

/// Parse the sparse text format, e.g. "3*X^4+6*X^2-1". Coefficients must be
/// integers.
IntPoly parse_int_poly(const std::string& text);

}  // namespace ffdep
