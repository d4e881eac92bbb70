#include "ffdep/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace ffdep {

std::string to_decimal(const BigInt& n) { return n.get_str(10); }

BigInt parse_bigint(const std::string& s) {
  BigInt out;
  if (s.empty() || out.set_str(s, 10) != 0) {
    throw DomainError("not a decimal integer: '" + s + "'");
  }
  return out;
}

double log_abs(const BigInt& n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  return is_prime(BigInt(std::to_string(n)));
}

Valuation vp(const BigInt& n, const BigInt& p) {
  if (!is_prime(p)) throw DomainError("vp: modulus " + to_decimal(p) + " is not prime");
  if (n == 0) return Valuation::inf();
  BigInt m = abs(n);
  std::uint64_t v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return {false, v};
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

namespace {

constexpr std::uint64_t kTrialBound = 1000000;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialBound);
  return primes;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
BigInt pollard_rho(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const BigInt& v) {
      BigInt t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(BigInt(x - y));
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        BigInt d = abs(BigInt(x - ys));
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(const BigInt& n, std::vector<BigInt>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const BigInt d = pollard_rho(n);
  split_into(d, primes);
  split_into(BigInt(n / d), primes);
}

}  // namespace

std::pair<Factorization, BigInt> trial_factor(const BigInt& n, std::uint64_t bound) {
  if (n == 0) throw DomainError("cannot factor zero");
  BigInt m = abs(n);
  Factorization out;
  auto try_prime = [&](std::uint64_t p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.emplace_back(BigInt(std::to_string(p)), e);
  };
  if (bound <= kTrialBound) {
    for (std::uint64_t p : small_primes()) {
      if (p > bound) break;
      if (m == 1) break;
      try_prime(p);
    }
  } else {
    for (std::uint64_t p : primes_up_to(bound)) {
      if (m == 1) break;
      try_prime(p);
    }
  }
  return {out, m};
}

Factorization factorize(const BigInt& n) {
  if (n == 0) throw DomainError("cannot factor zero");
  BigInt limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 2, 128);
  if (abs(n) > limit) throw DomainError("factorize: input exceeds 2^128");
  auto [out, rest] = trial_factor(n, kTrialBound);
  if (rest != 1) {
    std::vector<BigInt> big;
    split_into(rest, big);
    std::sort(big.begin(), big.end());
    for (const BigInt& p : big) {
      if (!out.empty() && out.back().first == p) {
        ++out.back().second;
      } else {
        out.emplace_back(p, 1);
      }
    }
  }
  return out;
}

Factorization factorize(std::uint64_t n) { return factorize(BigInt(std::to_string(n))); }

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace ffdep
