#include "ffdep/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

namespace ffdep {

namespace {

using u64 = std::uint64_t;

constexpr u64 kMaxQ = u64{1} << 32;

u64 powmod_u64(u64 a, u64 e, u64 m) {
  unsigned __int128 r = 1 % m;
  unsigned __int128 b = a % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<u64>(r);
}

// Dense polynomial helpers over F_p on raw residues, used for modulus search.
using Vec = std::vector<u64>;

void trim(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Vec prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  const std::size_t df = f.size() - 1;
  for (std::size_t k = prod.size(); k-- > df;) {
    const u64 c = prod[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= df; ++j) prod[k - df + j] = (prod[k - df + j] + (p - c) * f[j]) % p;
  }
  prod.resize(std::min(prod.size(), df));
  trim(prod);
  return prod;
}

// X^(p^k) mod f.
Vec frobenius_power(const Vec& f, u64 p, unsigned k) {
  Vec x = {0, 1};
  for (unsigned i = 0; i < k; ++i) {
    Vec r = {1};
    Vec b = x;
    u64 e = p;
    while (e) {
      if (e & 1) r = mulmod_poly(r, b, f, p);
      b = mulmod_poly(b, b, f, p);
      e >>= 1;
    }
    x = r;
  }
  return x;
}

Vec gcd_poly(Vec a, Vec b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 inv = powmod_u64(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const u64 c = a.back() * inv % p;
      const std::size_t s = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = (a[s + j] + (p - c) * b[j]) % p;
      trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

std::vector<unsigned> prime_divisors(unsigned d) {
  std::vector<unsigned> out;
  for (unsigned r = 2; r <= d; ++r) {
    if (d % r) continue;
    out.push_back(r);
    while (d % r == 0) d /= r;
  }
  return out;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& monic, std::uint64_t p) {
  if (monic.size() < 2 || monic.back() != 1) throw DomainError("is_irreducible_mod_p: expected a monic polynomial");
  const unsigned d = static_cast<unsigned>(monic.size() - 1);
  if (d == 1) return true;
  Vec full = frobenius_power(monic, p, d);
  Vec diff = full;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  trim(diff);
  if (!diff.empty()) return false;
  for (unsigned r : prime_divisors(d)) {
    Vec h = frobenius_power(monic, p, d / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (gcd_poly(monic, h, p).size() != 1) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), d_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  q_ = 1;
  for (unsigned i = 0; i < d_; ++i) q_ *= p_;
  for (const auto& [r, e] : factorize(q_ - 1)) factors_.emplace_back(r.get_ui(), e);
  if (p_ > 2) {
    for (Code z = 2; z < q_; ++z) {
      if (pow(z, (q_ - 1) / 2) == p_ - 1) {
        nonresidue_ = z;
        break;
      }
    }
  }
}

std::shared_ptr<const FieldCtx> FieldCtx::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw DomainError("field modulus must have degree >= 1");
  long double q = std::pow(static_cast<long double>(p), static_cast<long double>(modulus.size() - 1));
  if (q > static_cast<long double>(kMaxQ)) throw BudgetExceeded("field size exceeds 2^32");
  if (!is_irreducible_mod_p(modulus, p)) throw DomainError("field modulus is reducible");
  return std::shared_ptr<const FieldCtx>(new FieldCtx(p, std::move(modulus)));
}

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint64_t p, unsigned d) {
  if (d == 0) throw DomainError("field degree must be >= 1");
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  long double q = std::pow(static_cast<long double>(p), static_cast<long double>(d));
  if (q > static_cast<long double>(kMaxQ)) throw BudgetExceeded("field size exceeds 2^32");
  const u64 qq = static_cast<u64>(std::llround(q));
  for (u64 c = 0; c < qq; ++c) {
    Vec f(d + 1, 0);
    u64 t = c;
    for (unsigned i = 0; i < d; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[d] = 1;
    if (is_irreducible_mod_p(f, p)) return std::shared_ptr<const FieldCtx>(new FieldCtx(p, std::move(f)));
  }
  throw DomainError("no irreducible polynomial found");
}

std::shared_ptr<const FieldCtx> FieldCtx::parse(const std::string& spec) {
  const auto caret = spec.find('^');
  try {
    const u64 p = std::stoull(spec.substr(0, caret));
    const unsigned d = caret == std::string::npos ? 1U : static_cast<unsigned>(std::stoul(spec.substr(caret + 1)));
    return make(p, d);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("bad field spec '" + spec + "'");
  }
}

FieldCtx::Code FieldCtx::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return static_cast<Code>(r);
}

FieldCtx::Code FieldCtx::from_bigint(const BigInt& v) const { return mpz_fdiv_ui(v.get_mpz_t(), p_); }

std::vector<std::uint64_t> FieldCtx::digits(Code a) const {
  std::vector<std::uint64_t> c(d_);
  for (unsigned i = 0; i < d_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

FieldCtx::Code FieldCtx::from_digits(const std::vector<std::uint64_t>& c) const {
  Code out = 0;
  for (std::size_t i = c.size(); i-- > 0;) out = out * p_ + c[i] % p_;
  return out;
}

FieldCtx::Code FieldCtx::add(Code a, Code b) const {
  if (d_ == 1) {
    const Code s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Code out = 0;
  Code scale = 1;
  for (unsigned i = 0; i < d_; ++i) {
    const u64 s = (a % p_ + b % p_) % p_;
    out += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

FieldCtx::Code FieldCtx::neg(Code a) const {
  if (d_ == 1) return a == 0 ? 0 : p_ - a;
  Code out = 0;
  Code scale = 1;
  for (unsigned i = 0; i < d_; ++i) {
    const u64 c = a % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    scale *= p_;
    a /= p_;
  }
  return out;
}

FieldCtx::Code FieldCtx::sub(Code a, Code b) const { return add(a, neg(b)); }

FieldCtx::Code FieldCtx::mul(Code a, Code b) const {
  if (d_ == 1) return mulp(a, b);
  const auto x = digits(a);
  const auto y = digits(b);
  std::vector<u64> prod(2 * d_ - 1, 0);
  for (unsigned i = 0; i < d_; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + mulp(x[i], y[j])) % p_;
  }
  for (std::size_t k = prod.size(); k-- > d_;) {
    const u64 c = prod[k];
    if (c == 0) continue;
    for (unsigned j = 0; j < d_; ++j) prod[k - d_ + j] = (prod[k - d_ + j] + mulp(p_ - c, modulus_[j])) % p_;
  }
  prod.resize(d_);
  return from_digits(prod);
}

FieldCtx::Code FieldCtx::pow(Code a, std::uint64_t e) const {
  Code r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldCtx::Code FieldCtx::inv(Code a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (d_ == 1) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p_), nr = static_cast<long long>(a);
    while (nr != 0) {
      const long long qt = r / nr;
      t -= qt * nt;
      std::swap(t, nt);
      r -= qt * nr;
      std::swap(r, nr);
    }
    return from_int(t);
  }
  return pow(a, q_ - 2);
}

bool FieldCtx::is_square(Code a) const {
  if (a == 0 || p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<FieldCtx::Code> FieldCtx::sqrt(Code a) const {
  if (a == 0) return Code{0};
  if (p_ == 2) return pow(a, q_ / 2);
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks.
  u64 t = q_ - 1;
  unsigned s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  Code z = pow(nonresidue_, t);
  Code x = pow(a, (t + 1) / 2);
  Code b = pow(a, t);
  unsigned m = s;
  while (b != 1) {
    unsigned i = 0;
    Code bb = b;
    while (bb != 1) {
      bb = sqr(bb);
      ++i;
    }
    Code w = z;
    for (unsigned j = 0; j + i + 1 < m; ++j) w = sqr(w);
    x = mul(x, w);
    z = sqr(w);
    b = mul(b, z);
    m = i;
  }
  const Code y = neg(x);
  return std::min(x, y);
}

std::string FieldCtx::format(Code a) const {
  std::ostringstream os;
  os << '[';
  const auto c = digits(a);
  for (unsigned i = 0; i < d_; ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

FieldCtx::Code FieldCtx::parse_element(const std::string& text) const {
  std::string body = text;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw DomainError("bad element literal '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<u64> c;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(from_bigint(parse_bigint(item)));
  if (c.size() > d_) throw DomainError("element literal longer than the field degree");
  return from_digits(c);
}

FieldCtx::Code FqElem::check(const FqElem& o) const {
  if (o.ctx_ != ctx_ && !ctx_->same_field(*o.ctx_)) {
    throw DomainError("field elements from different contexts: " + ctx_->spec() + " vs " + o.ctx_->spec());
  }
  return o.code_;
}

std::uint64_t mult_order(const FieldCtx& ctx, FieldCtx::Code x) {
  if (x == 0) throw DomainError("multiplicative order of zero");
  u64 n = ctx.q() - 1;
  for (const auto& [r, e] : ctx.unit_group_factors()) {
    for (unsigned i = 0; i < e; ++i) {
      if (ctx.pow(x, n / r) != 1) break;
      n /= r;
    }
  }
  return n;
}

std::uint64_t mult_order(const FqElem& x) { return mult_order(*x.ctx(), x.code()); }

std::optional<std::uint64_t> discrete_log(const FieldCtx& ctx, FieldCtx::Code base, FieldCtx::Code x) {
  if (base == 0 || x == 0) throw DomainError("discrete_log of zero");
  const u64 ord = mult_order(ctx, base);
  if (ctx.pow(x, ord) != 1) return std::nullopt;
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<long double>(ord))));
  std::unordered_map<FieldCtx::Code, u64> baby;
  baby.reserve(m * 2);
  FieldCtx::Code cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = ctx.mul(cur, base);
  }
  const FieldCtx::Code giant = ctx.inv(ctx.pow(base, m));
  FieldCtx::Code y = x;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(y); it != baby.end()) return i * m + it->second;
    y = ctx.mul(y, giant);
  }
  return std::nullopt;
}

std::optional<std::uint64_t> discrete_log(const FqElem& base, const FqElem& x) {
  if (!base.ctx()->same_field(*x.ctx())) throw DomainError("discrete_log across contexts");
  return discrete_log(*base.ctx(), base.code(), x.code());
}

// ---------------------------------------------------------------- FqPoly

namespace {

void trim_fq(FqPoly& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace

FqPoly reduce_poly(const IntPoly& f, const FieldCtx& ctx) {
  FqPoly out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(ctx.from_bigint(c));
  trim_fq(out);
  return out;
}

FqPoly reduce_poly(const RatPoly& f, const FieldCtx& ctx) {
  FqPoly out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    const auto den = ctx.from_bigint(c.get_den());
    if (den == 0) throw DomainError("denominator divisible by the characteristic");
    out.push_back(ctx.div(ctx.from_bigint(c.get_num()), den));
  }
  trim_fq(out);
  return out;
}

FieldCtx::Code evaluate(const FqPoly& f, FieldCtx::Code x, const FieldCtx& ctx) {
  FieldCtx::Code acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = ctx.add(ctx.mul(acc, x), *it);
  return acc;
}

FqPoly poly_mul(const FqPoly& a, const FqPoly& b, const FieldCtx& ctx) {
  if (a.empty() || b.empty()) return {};
  FqPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = ctx.add(out[i + j], ctx.mul(a[i], b[j]));
  }
  trim_fq(out);
  return out;
}

FqPoly poly_add(const FqPoly& a, const FqPoly& b, const FieldCtx& ctx) {
  FqPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ctx.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim_fq(out);
  return out;
}

FqPoly poly_sub(const FqPoly& a, const FqPoly& b, const FieldCtx& ctx) {
  FqPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ctx.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim_fq(out);
  return out;
}

FqPoly poly_scale(const FqPoly& a, FieldCtx::Code c, const FieldCtx& ctx) {
  FqPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx.mul(a[i], c);
  trim_fq(out);
  return out;
}

FqPoly poly_rem(FqPoly a, const FqPoly& b, const FieldCtx& ctx) {
  if (b.empty()) throw DomainError("polynomial remainder by zero");
  trim_fq(a);
  const auto inv = ctx.inv(b.back());
  while (a.size() >= b.size()) {
    const auto c = ctx.mul(a.back(), inv);
    const std::size_t s = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = ctx.sub(a[s + j], ctx.mul(c, b[j]));
    trim_fq(a);
  }
  return a;
}

FqPoly poly_gcd(FqPoly a, FqPoly b, const FieldCtx& ctx) {
  trim_fq(a);
  trim_fq(b);
  while (!b.empty()) {
    a = poly_rem(std::move(a), b, ctx);
    std::swap(a, b);
  }
  if (!a.empty()) a = poly_scale(a, ctx.inv(a.back()), ctx);
  return a;
}

namespace {

FqPoly powmod_fq(FqPoly base, std::uint64_t e, const FqPoly& f, const FieldCtx& ctx) {
  FqPoly r = {1};
  base = poly_rem(std::move(base), f, ctx);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base, ctx), f, ctx);
    base = poly_rem(poly_mul(base, base, ctx), f, ctx);
    e >>= 1;
  }
  return r;
}

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const FqPoly& g, const FieldCtx& ctx, std::mt19937_64& rng, std::vector<FieldCtx::Code>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(ctx.neg(g[0]));
    return;
  }
  if (ctx.p() == 2) {
    // Characteristic 2 is only reached for tiny fields, which go exhaustive.
    throw DomainError("root splitting in characteristic 2");
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, ctx.q() - 1);
  for (;;) {
    const FqPoly shift = {dist(rng), 1};
    FqPoly h = powmod_fq(shift, (ctx.q() - 1) / 2, g, ctx);
    h = poly_sub(h, {1}, ctx);
    FqPoly d = poly_gcd(g, h, ctx);
    if (d.size() > 1 && d.size() < g.size()) {
      FqPoly rest = g;
      // g / d by long division; exact.
      FqPoly quot(g.size() - d.size() + 1, 0);
      const auto inv = ctx.inv(d.back());
      while (rest.size() >= d.size()) {
        const auto c = ctx.mul(rest.back(), inv);
        const std::size_t s = rest.size() - d.size();
        quot[s] = c;
        for (std::size_t j = 0; j < d.size(); ++j) rest[s + j] = ctx.sub(rest[s + j], ctx.mul(c, d[j]));
        trim_fq(rest);
      }
      trim_fq(quot);
      split_linear(d, ctx, rng, out);
      split_linear(quot, ctx, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FieldCtx::Code> roots_in_ctx(const IntPoly& f, const FieldCtx& ctx) {
  const FqPoly fr = reduce_poly(f, ctx);
  if (fr.empty()) throw DomainError("roots_in_ctx: polynomial vanishes mod p");
  std::vector<FieldCtx::Code> out;
  if (fr.size() == 1) return out;
  if (ctx.q() <= (u64{1} << 20)) {
    for (FieldCtx::Code x = 0; x < ctx.q(); ++x) {
      if (evaluate(fr, x, ctx) == 0) out.push_back(x);
    }
    return out;
  }
  const FqPoly monic = poly_scale(fr, ctx.inv(fr.back()), ctx);
  FqPoly xq = powmod_fq({0, 1}, ctx.q(), monic, ctx);
  xq = poly_sub(xq, {0, 1}, ctx);
  const FqPoly g = poly_gcd(monic, xq, ctx);
  std::mt19937_64 rng(0x5eedULL);
  split_linear(g, ctx, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

FieldCtx::Code QuadraticExtension::embed(FieldCtx::Code a) const {
  if (base->d() == 1) return a;
  const auto c = base->digits(a);
  FieldCtx::Code acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = ext->add(ext->mul(acc, generator_image), c[i]);
  return acc;
}

QuadraticExtension quadratic_extension(const FieldPtr& base) {
  QuadraticExtension out;
  out.base = base;
  out.ext = FieldCtx::make(base->p(), 2 * base->d());
  if (base->d() > 1) {
    std::vector<BigInt> mod;
    for (u64 c : base->modulus()) mod.emplace_back(static_cast<unsigned long>(c));
    const auto roots = roots_in_ctx(IntPoly(std::move(mod)), *out.ext);
    if (roots.empty()) throw DomainError("base modulus has no root in the extension");
    out.generator_image = roots.front();
  }
  return out;
}

}  // namespace ffdep
