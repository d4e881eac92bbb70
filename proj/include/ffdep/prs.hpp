#pragma once

// Fraction-free subresultant machinery, generic over an exact integral domain R.
//
// R must provide +, -, *, unary -, and the free functions is_zero(r) and
// exact_div(a, b) (b divides a exactly). Polynomials over R are dense
// coefficient vectors, index i holding the coefficient of X^i, with no zero
// leading entry.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ffdep {

inline bool is_zero(const mpz_class& a) { return a == 0; }

inline mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

namespace prs {

template <class R>
void trim(std::vector<R>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class R>
int degree(const std::vector<R>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class R>
R power(const R& base, unsigned e, const R& one) {
  R out = one;
  R b = base;
  while (e > 0) {
    if (e & 1U) out = out * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return out;
}

/// lc(b)^(deg a - deg b + 1) * a  mod  b.
template <class R>
std::vector<R> pseudo_remainder(std::vector<R> a, const std::vector<R>& b, const R& one) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("pseudo_remainder: zero divisor");
  int remaining = degree(a) - db + 1;
  if (remaining <= 0) return a;
  const R& lb = b.back();
  while (degree(a) >= db) {
    const std::size_t shift = static_cast<std::size_t>(degree(a) - db);
    const R la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] = a[j + shift] - la * b[j];
    trim(a);
    --remaining;
  }
  if (remaining > 0) {
    const R f = power(lb, static_cast<unsigned>(remaining), one);
    for (auto& c : a) c = c * f;
  }
  return a;
}

/// Res(a, b) with the Sylvester-determinant sign convention, via the
/// subresultant remainder sequence. Zero when either input is zero.
template <class R>
R resultant(std::vector<R> a, std::vector<R> b, const R& one) {
  trim(a);
  trim(b);
  const R zero = one - one;
  if (a.empty() || b.empty()) return zero;
  int sign = 1;
  if (degree(a) < degree(b)) {
    if ((degree(a) & 1) && (degree(b) & 1)) sign = -sign;
    std::swap(a, b);
  }
  if (degree(b) == 0) {
    R r = power(b[0], static_cast<unsigned>(degree(a)), one);
    return sign > 0 ? r : -r;
  }
  R g = one;
  R h = one;
  for (;;) {
    const int delta = degree(a) - degree(b);
    if ((degree(a) & 1) && (degree(b) & 1)) sign = -sign;
    std::vector<R> r = pseudo_remainder(a, b, one);
    a = std::move(b);
    if (r.empty()) return zero;
    const R divisor = g * power(h, static_cast<unsigned>(delta), one);
    for (auto& c : r) c = exact_div(c, divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(power(g, static_cast<unsigned>(delta), one),
                    power(h, static_cast<unsigned>(delta - 1), one));
    }
    if (degree(b) == 0) {
      const int da = degree(a);
      R out = da == 1 ? b[0]
                      : exact_div(power(b[0], static_cast<unsigned>(da), one),
                                  power(h, static_cast<unsigned>(da - 1), one));
      return sign > 0 ? out : -out;
    }
  }
}

}  // namespace prs
}  // namespace ffdep
