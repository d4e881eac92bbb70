#pragma once

#include "ffdep/poly.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ffdep {

/// F_q with q = p^d <= 2^32. Elements are encoded as integers
/// code = c_0 + c_1 p + ... + c_{d-1} p^{d-1} for the residue
/// c_0 + c_1 t + ... mod the defining polynomial. For d = 1 the code is the
/// residue itself.
class FieldCtx {
 public:
  using Code = std::uint64_t;

  /// Uses the least monic irreducible of degree d (ordered by code of its
  /// low coefficients).
  static std::shared_ptr<const FieldCtx> make(std::uint64_t p, unsigned d = 1);
  /// Parses "p^d" or "p".
  static std::shared_ptr<const FieldCtx> parse(const std::string& spec);
  /// Explicit monic modulus, low-to-high, length d+1; irreducibility checked.
  static std::shared_ptr<const FieldCtx> with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::uint64_t p() const { return p_; }
  unsigned d() const { return d_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  std::string spec() const { return std::to_string(p_) + "^" + std::to_string(d_); }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code from_int(long long v) const;
  Code from_bigint(const BigInt& v) const;
  /// Digits c_0..c_{d-1}.
  std::vector<std::uint64_t> digits(Code a) const;
  Code from_digits(const std::vector<std::uint64_t>& c) const;

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code sqr(Code a) const { return mul(a, a); }
  /// DomainError on zero.
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t e) const;

  bool is_square(Code a) const;
  /// Square root with the smallest code, if any.
  std::optional<Code> sqrt(Code a) const;

  /// Factorization of q-1, computed once.
  const std::vector<std::pair<std::uint64_t, unsigned>>& unit_group_factors() const { return factors_; }

  /// Text "[c0,c1,...]" (always d entries).
  std::string format(Code a) const;
  Code parse_element(const std::string& text) const;

  bool same_field(const FieldCtx& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  FieldCtx(std::uint64_t p, std::vector<std::uint64_t> modulus);
  std::uint64_t mulp(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }

  std::uint64_t p_;
  unsigned d_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::pair<std::uint64_t, unsigned>> factors_;
  Code nonresidue_ = 0;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Element bound to its context. Mixing contexts throws DomainError.
class FqElem {
 public:
  FqElem(FieldPtr ctx, FieldCtx::Code code) : ctx_(std::move(ctx)), code_(code) {}

  const FieldPtr& ctx() const { return ctx_; }
  FieldCtx::Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  FqElem operator+(const FqElem& o) const { return {ctx_, ctx_->add(code_, check(o))}; }
  FqElem operator-(const FqElem& o) const { return {ctx_, ctx_->sub(code_, check(o))}; }
  FqElem operator*(const FqElem& o) const { return {ctx_, ctx_->mul(code_, check(o))}; }
  FqElem operator/(const FqElem& o) const { return {ctx_, ctx_->div(code_, check(o))}; }
  FqElem operator-() const { return {ctx_, ctx_->neg(code_)}; }
  FqElem pow(std::uint64_t e) const { return {ctx_, ctx_->pow(code_, e)}; }
  FqElem inv() const { return {ctx_, ctx_->inv(code_)}; }
  bool operator==(const FqElem& o) const { return code_ == check(o); }

  std::string to_string() const { return ctx_->format(code_); }

 private:
  FieldCtx::Code check(const FqElem& o) const;
  FieldPtr ctx_;
  FieldCtx::Code code_;
};

/// Rabin's irreducibility test for a monic polynomial over F_p.
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& monic, std::uint64_t p);

/// Least t >= 1 with x^t = 1.
std::uint64_t mult_order(const FqElem& x);
std::uint64_t mult_order(const FieldCtx& ctx, FieldCtx::Code x);

/// Least e >= 0 with base^e = x, if any (baby-step giant-step).
std::optional<std::uint64_t> discrete_log(const FqElem& base, const FqElem& x);
std::optional<std::uint64_t> discrete_log(const FieldCtx& ctx, FieldCtx::Code base, FieldCtx::Code x);

/// All roots of f mod p in the context, ascending by code.
std::vector<FieldCtx::Code> roots_in_ctx(const IntPoly& f, const FieldCtx& ctx);

/// Polynomial with coefficients in F_q (codes), low-to-high, trimmed.
using FqPoly = std::vector<FieldCtx::Code>;
FqPoly reduce_poly(const IntPoly& f, const FieldCtx& ctx);
/// Reduce a rational-coefficient polynomial; DomainError if a denominator
/// vanishes mod p.
FqPoly reduce_poly(const RatPoly& f, const FieldCtx& ctx);
FieldCtx::Code evaluate(const FqPoly& f, FieldCtx::Code x, const FieldCtx& ctx);
FqPoly poly_mul(const FqPoly& a, const FqPoly& b, const FieldCtx& ctx);
FqPoly poly_add(const FqPoly& a, const FqPoly& b, const FieldCtx& ctx);
FqPoly poly_sub(const FqPoly& a, const FqPoly& b, const FieldCtx& ctx);
FqPoly poly_scale(const FqPoly& a, FieldCtx::Code c, const FieldCtx& ctx);
/// Remainder of a mod b (b nonzero).
FqPoly poly_rem(FqPoly a, const FqPoly& b, const FieldCtx& ctx);
/// Monic gcd.
FqPoly poly_gcd(FqPoly a, FqPoly b, const FieldCtx& ctx);

/// Degree-2 extension of a context together with the embedding of the base.
struct QuadraticExtension {
  FieldPtr base;
  FieldPtr ext;
  /// Image of the base generator t (for d = 1 unused).
  FieldCtx::Code generator_image = 0;

  FieldCtx::Code embed(FieldCtx::Code a) const;
};

/// Builds F_{q^2} over F_p with the least irreducible of degree 2d, and an
/// explicit embedding of the base field. Requires q^2 <= 2^32.
QuadraticExtension quadratic_extension(const FieldPtr& base);

}  // namespace ffdep
