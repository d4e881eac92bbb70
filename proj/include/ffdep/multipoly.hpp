#pragma once

#include "ffdep/bigint.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ffdep {

/// Sparse polynomial over Z in up to 8 variables, each of degree <= 255.
/// Terms are kept in descending graded-lex order (variable 0 most
/// significant) with no zero coefficients.
class MultiPoly {
 public:
  /// Exponent of variable i sits in byte 7 - i, so lex order on monomials is
  /// integer order on the packed word.
  using Mono = std::uint64_t;
  using Term = std::pair<Mono, BigInt>;
  static constexpr int kMaxVars = 8;

  /// Caps |a| * |b| for products on the current thread while alive; 0 means
  /// unlimited. Exceeding it throws BudgetExceeded.
  class BudgetScope {
   public:
    explicit BudgetScope(std::size_t max_term_pairs);
    ~BudgetScope();
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

   private:
    std::size_t saved_;
  };

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) { check_nvars(); }
  MultiPoly(int nvars, std::vector<Term> terms);

  static MultiPoly constant(int nvars, const BigInt& c);
  static MultiPoly variable(int nvars, int i);
  static Mono pack(std::span<const unsigned> exps);
  static unsigned exponent(Mono m, int i) { return static_cast<unsigned>((m >> (8 * (7 - i))) & 0xFF); }
  static unsigned total_degree(Mono m);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const;

  MultiPoly operator-() const;
  friend MultiPoly merge_sorted(const MultiPoly& a, const MultiPoly& b, bool subtract);
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const BigInt& c);
  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// Exact quotient; DomainError if b does not divide.
  MultiPoly exact_div(const MultiPoly& b) const;
  MultiPoly divexact(const BigInt& c) const;
  void divexact_inplace(const BigInt& c);
  void negate_inplace();
  /// Drops variables nvars.. which must not occur; monomials keep their packing.
  void truncate_vars(int nvars);
  /// Coefficient of m, or nullopt when absent.
  std::optional<BigInt> coefficient(Mono m) const;
  /// Non-negative gcd of coefficients.
  BigInt content() const;
  unsigned degree_in(int var) const;
  unsigned total_degree() const;

  /// Coefficients of var^0 .. var^deg as polynomials in the same ring.
  std::vector<MultiPoly> coefficients_in(int var) const;
  /// sum_k c_k var^k.
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& c, int var);
  /// Variable i of this becomes variable map[i] of a ring with nvars variables.
  MultiPoly rename(const std::vector<int>& map, int nvars) const;

  /// Reductions mod m of the coefficients, aligned with terms().
  std::vector<std::uint64_t> coefficients_mod(std::uint64_t m) const;
  BigInt max_abs_coefficient() const;

  /// One term per line, "coeff:e1,...,en", in the stored order.
  std::string serialize() const;
  static MultiPoly deserialize(const std::string& text);

 private:
  void check_nvars() const;
  void sort_and_trim();
  static thread_local std::size_t term_budget_;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

bool is_zero(const MultiPoly& a);
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b);

}  // namespace ffdep
