#include "ffdep/poly.hpp"

#include "ffdep/prs.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace ffdep {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPoly::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

IntPoly IntPoly::operator-() const {
  IntPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  *this = *this * o;
  return *this;
}

namespace {

// Kronecker substitution: pack coefficients as base-2^k digits of one big
// integer, multiply with GMP, unpack signed digits.
BigInt kronecker_pack(std::span<const BigInt> c, std::size_t lo, std::size_t hi, mp_bitcnt_t k) {
  if (hi - lo == 1) return c[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  BigInt high = kronecker_pack(c, mid, hi, k);
  mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), k * (mid - lo));
  return high + kronecker_pack(c, lo, mid, k);
}

void kronecker_unpack(BigInt value, std::size_t count, mp_bitcnt_t k, std::vector<BigInt>& out,
                      std::size_t offset) {
  if (count == 1) {
    out[offset] = std::move(value);
    return;
  }
  const std::size_t low_count = count / 2;
  const mp_bitcnt_t bits = k * low_count;
  BigInt low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), value.get_mpz_t(), bits);
  if (mpz_tstbit(low.get_mpz_t(), bits - 1)) {
    BigInt span_top;
    mpz_setbit(span_top.get_mpz_t(), bits);
    low -= span_top;
  }
  value -= low;
  mpz_fdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), bits);
  kronecker_unpack(std::move(low), low_count, k, out, offset);
  kronecker_unpack(std::move(value), count - low_count, k, out, offset + low_count);
}

std::size_t max_bits(std::span<const BigInt> c) {
  std::size_t b = 0;
  for (const auto& x : c) b = std::max<std::size_t>(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

}  // namespace

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ac = a.coeffs_;
  const auto& bc = b.coeffs_;
  const std::size_t n = ac.size() + bc.size() - 1;
  if (std::min(ac.size(), bc.size()) < 12) {
    std::vector<BigInt> out(n);
    for (std::size_t i = 0; i < ac.size(); ++i) {
      if (ac[i] == 0) continue;
      for (std::size_t j = 0; j < bc.size(); ++j) {
        mpz_addmul(out[i + j].get_mpz_t(), ac[i].get_mpz_t(), bc[j].get_mpz_t());
      }
    }
    return IntPoly(std::move(out));
  }
  std::size_t min_len = std::min(ac.size(), bc.size());
  std::size_t log_len = 1;
  while ((std::size_t{1} << log_len) < min_len) ++log_len;
  const mp_bitcnt_t k = max_bits(ac) + max_bits(bc) + log_len + 2;
  BigInt prod = kronecker_pack(ac, 0, ac.size(), k) * kronecker_pack(bc, 0, bc.size(), k);
  std::vector<BigInt> out(n);
  kronecker_unpack(std::move(prod), n, k, out, 0);
  return IntPoly(std::move(out));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly out = IntPoly::constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1U) out *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return out;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(out));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::divexact(const BigInt& c) const {
  IntPoly out = *this;
  for (auto& x : out.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return out;
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return {};
  BigInt c = content();
  if (coeffs_.back() < 0) c = -c;
  return c == 1 ? *this : divexact(c);
}

BigInt IntPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigRat IntPoly::evaluate(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + BigRat(*it);
  return acc;
}

std::vector<std::uint64_t> IntPoly::reduce_mod(std::uint64_t m) const {
  std::vector<std::uint64_t> out(coeffs_.size());
  BigInt r;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = mpz_fdiv_ui(coeffs_[i].get_mpz_t(), m);
  }
  return out;
}

namespace {

template <class Coeff>
std::string format_terms(std::span<const Coeff> c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    const Coeff& v = c[k];
    if (v == 0) continue;
    const bool neg = sgn(v) < 0;
    Coeff mag = abs(v);
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? '-' : '+');
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'X';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

}  // namespace

std::string IntPoly::to_string() const { return format_terms<BigInt>(coeffs_); }

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

RatPoly::RatPoly(const IntPoly& p) {
  coeffs_.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
}

void RatPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRat> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RatPoly(std::move(out));
}

RatPoly operator*(RatPoly a, const BigRat& c) {
  for (auto& x : a.coeffs_) x *= c;
  a.normalize();
  return a;
}

BigRat RatPoly::evaluate(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigInt RatPoly::denominator_lcm() const {
  BigInt l = 1;
  for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

std::pair<IntPoly, BigInt> RatPoly::to_integral() const {
  const BigInt l = denominator_lcm();
  std::vector<BigInt> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = coeffs_[i].get_num() * (l / coeffs_[i].get_den());
  }
  return {IntPoly(std::move(out)), l};
}

IntPoly RatPoly::to_primitive() const { return to_integral().first.primitive(); }

std::string RatPoly::to_string() const { return format_terms<BigRat>(coeffs_); }

// ---------------------------------------------------------------- heights

double log_height(const IntPoly& f) {
  BigInt H = 0;
  for (const auto& c : f.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), H.get_mpz_t()) > 0) H = abs(c);
  }
  return H <= 1 ? 0.0 : log_abs(H);
}

HeightReport height(const IntPoly& f) {
  HeightReport r;
  r.H = 0;
  for (const auto& c : f.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), r.H.get_mpz_t()) > 0) r.H = abs(c);
  }
  r.h = r.H <= 1 ? 0.0 : log_abs(r.H);
  const int d = std::max(f.degree(), 0);
  const double logH = r.H == 0 ? -INFINITY : log_abs(r.H);
  r.mahler_lower = std::exp(logH - d * std::log(2.0));
  r.mahler_upper = std::exp(logH + 0.5 * std::log(d + 1.0));
  return r;
}

double product_height_bound(std::span<const IntPoly> fs) {
  double total = 0.0;
  for (const auto& f : fs) {
    if (f.is_zero()) throw DomainError("product_height_bound: zero polynomial");
    total += log_height(f) + f.degree();
  }
  return total;
}

// ---------------------------------------------------------------- resultants

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant: zero polynomial");
  std::vector<BigInt> a(f.coeffs().begin(), f.coeffs().end());
  std::vector<BigInt> b(g.coeffs().begin(), g.coeffs().end());
  return prs::resultant<BigInt>(std::move(a), std::move(b), BigInt(1));
}

BigInt resultant_sylvester(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant: zero polynomial");
  const int m = f.degree();
  const int n = g.degree();
  const int size = m + n;
  if (size == 0) return 1;
  // Rows 0..n-1 hold shifted copies of f, rows n..n+m-1 of g; columns by
  // descending power.
  std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) a[r][r + i] = f.coeff(m - i);
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) a[n + r][r + i] = g.coeff(n - i);
  }
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        BigInt v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  BigInt det = a[size - 1][size - 1];
  return sign > 0 ? det : BigInt(-det);
}

bool within_hadamard_bound(const BigInt& res, const IntPoly& f, const IntPoly& g) {
  const unsigned long df = static_cast<unsigned long>(f.degree());
  const unsigned long dg = static_cast<unsigned long>(g.degree());
  const BigInt Hf = height(f).H;
  const BigInt Hg = height(g).H;
  // Compare squares so every quantity stays integral.
  BigInt rhs = pow(BigInt(df + 1), dg) * pow(Hf, 2 * dg) * pow(BigInt(dg + 1), df) * pow(Hg, 2 * df);
  return res * res <= rhs;
}

double log_hadamard_bound(const IntPoly& f, const IntPoly& g) {
  const double df = f.degree();
  const double dg = g.degree();
  const double hf = f.is_zero() ? 0.0 : log_abs(height(f).H);
  const double hg = g.is_zero() ? 0.0 : log_abs(height(g).H);
  return dg * (0.5 * std::log(df + 1) + hf) + df * (0.5 * std::log(dg + 1) + hg);
}

// ---------------------------------------------------------------- gcd family

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("divide_exact: zero divisor");
  if (a.is_zero()) return {};
  const int db = b.degree();
  if (a.degree() < db) throw DomainError("divide_exact: divisor does not divide");
  std::vector<BigInt> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1));
  const BigInt& lb = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    BigInt& top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) {
      throw DomainError("divide_exact: divisor does not divide");
    }
    BigInt t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(k + j)].get_mpz_t(), t.get_mpz_t(),
                 b.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
    }
    q[static_cast<std::size_t>(k)] = std::move(t);
  }
  for (const auto& r : rem) {
    if (r != 0) throw DomainError("divide_exact: divisor does not divide");
  }
  return IntPoly(std::move(q));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  IntPoly x = a.primitive();
  IntPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return IntPoly::constant(1);
    std::vector<BigInt> xa(x.coeffs().begin(), x.coeffs().end());
    std::vector<BigInt> ya(y.coeffs().begin(), y.coeffs().end());
    IntPoly r(prs::pseudo_remainder<BigInt>(std::move(xa), ya, BigInt(1)));
    x = std::move(y);
    y = r.primitive();
  }
  return x.primitive();
}

IntPoly squarefree_part(const IntPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree_part: zero polynomial");
  const IntPoly p = f.primitive();
  if (p.degree() <= 0) return IntPoly::constant(1);
  const IntPoly g = gcd(p, p.derivative());
  return divide_exact(p, g).primitive();
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void trim_mod(std::vector<u64>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Monic gcd over F_p of dense residue vectors.
std::vector<u64> gcd_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const u64 factor = mulmod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + p - mulmod(factor, b[j], p)) % p;
      }
      trim_mod(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

std::uint64_t common_roots_mod_p(const IntPoly& f, const IntPoly& g, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("common_roots_mod_p: modulus is not prime");
  auto fr = f.reduce_mod(p);
  auto gr = g.reduce_mod(p);
  trim_mod(fr);
  trim_mod(gr);
  if (fr.empty() && gr.empty()) {
    throw DomainError("common_roots_mod_p: both reductions vanish mod p");
  }
  const auto d = gcd_mod(std::move(fr), std::move(gr), p);
  return d.empty() ? 0 : d.size() - 1;
}

double mahler_measure_numeric(const IntPoly& f) {
  if (f.is_zero()) throw DomainError("mahler_measure_numeric: zero polynomial");
  const int d = f.degree();
  const long double lc = f.leading().get_d();
  if (d == 0) return std::fabs(static_cast<double>(lc));
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat companion = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0L;
  for (int i = 0; i < d; ++i) {
    companion(i, d - 1) = -static_cast<long double>(f.coeff(static_cast<std::size_t>(i)).get_d()) / lc;
  }
  Eigen::EigenSolver<Mat> solver(companion, false);
  using C = std::complex<long double>;
  long double m = std::fabs(lc);
  for (int i = 0; i < d; ++i) {
    C z = solver.eigenvalues()[i];
    // Newton polish against the original integer polynomial.
    for (int it = 0; it < 4; ++it) {
      C v = 0;
      C dv = 0;
      for (int k = d; k >= 0; --k) {
        dv = dv * z + v;
        v = v * z + static_cast<long double>(f.coeff(static_cast<std::size_t>(k)).get_d());
      }
      if (std::abs(dv) == 0.0L) break;
      const C step = v / dv;
      if (!std::isfinite(std::abs(step))) break;
      z -= step;
    }
    m *= std::max<long double>(1.0L, std::abs(z));
  }
  return static_cast<double>(m);
}

}  // namespace ffdep
