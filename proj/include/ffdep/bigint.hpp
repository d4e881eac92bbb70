#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffdep {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Raised when an operation's documented precondition does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed its desk-scale budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p-adic valuation; v_p(0) is infinite.
struct Valuation {
  bool infinite = false;
  std::uint64_t value = 0;

  static Valuation inf() { return {true, 0}; }
  bool operator==(const Valuation&) const = default;
  /// True when this valuation is at least `m`.
  bool at_least(std::uint64_t m) const { return infinite || value >= m; }
  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

using Factorization = std::vector<std::pair<BigInt, unsigned>>;

std::string to_decimal(const BigInt& n);
BigInt parse_bigint(const std::string& s);

/// Natural log of |n|; -inf for n = 0. Accurate for arbitrarily large n.
double log_abs(const BigInt& n);

bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

Valuation vp(const BigInt& n, const BigInt& p);

/// All primes <= n, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Full factorization of |n| (n != 0): trial division to 10^6, then Pollard rho.
/// Inputs above 2^128 are rejected.
Factorization factorize(const BigInt& n);
Factorization factorize(std::uint64_t n);

/// Trial division of |n| by primes <= bound. Returns the small factors and the
/// remaining cofactor (1 when fully split).
std::pair<Factorization, BigInt> trial_factor(const BigInt& n, std::uint64_t bound);

BigInt pow(const BigInt& base, unsigned long exp);

}  // namespace ffdep
