#pragma once

#include "ffdep/field.hpp"
#include "ffdep/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffdep {

class BadReduction : public DomainError {
 public:
  using DomainError::DomainError;
};

/// y^2 = x^3 + a x + b over Q.
struct CurveQ {
  BigRat a;
  BigRat b;

  CurveQ(BigRat a_, BigRat b_);
  /// "a=<rational>,b=<rational>".
  static CurveQ parse(const std::string& spec);
  std::string to_string() const;
  /// 4a^3 + 27b^2.
  BigRat discriminant_part() const;
  bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
};

using Code = FieldCtx::Code;

struct PointFq {
  bool infinity = true;
  Code x = 0;
  Code y = 0;

  static PointFq at_infinity() { return {}; }
  static PointFq affine(Code x, Code y) { return {false, x, y}; }
  bool operator==(const PointFq&) const = default;
};

/// y^2 = x^3 + a x + b over a finite field, with nonzero 4a^3 + 27b^2.
/// Characteristic 2 is rejected since the short model degenerates there.
class CurveFq {
 public:
  CurveFq(FieldPtr ctx, Code a, Code b);

  const FieldPtr& ctx() const { return ctx_; }
  Code a() const { return a_; }
  Code b() const { return b_; }
  bool same_curve(const CurveFq& o) const;

  /// x^3 + a x + b.
  Code rhs(Code x) const;
  bool on_curve(const PointFq& P) const;
  PointFq neg(const PointFq& P) const;
  PointFq add(const PointFq& P, const PointFq& Q) const;
  PointFq dbl(const PointFq& P) const { return add(P, P); }
  PointFq scalar_mul(long long k, const PointFq& P) const;

  /// All affine points, ascending by (x, y).
  std::vector<PointFq> affine_points() const;
  /// #E(F_q) by counting, cached. Only for q <= 10^6.
  std::uint64_t group_order() const;
  std::uint64_t point_order(const PointFq& P) const;

  /// Same curve over a larger context through an embedding.
  CurveFq base_change(const QuadraticExtension& ext) const;

  std::string to_string() const;

 private:
  FieldPtr ctx_;
  Code a_;
  Code b_;
  mutable std::uint64_t order_cache_ = 0;
};

/// Reduction of E modulo the characteristic of ctx.
CurveFq reduce_mod_p(const CurveQ& E, const FieldPtr& ctx);

struct OrdEpResult {
  std::uint64_t order = 0;
  /// True when beta lies only in the quadratic extension.
  bool extended = false;
};

/// Order of (alpha, beta) for either square root beta of alpha^3 + a alpha + b.
OrdEpResult ord_Ep(Code alpha, const CurveFq& E);

/// Division polynomial data in Y-free form.
struct DivPoly {
  int n = 0;
  bool even = false;
  /// Psi_n, phi_n, psi_n^2 with exact rational coefficients.
  RatPoly psi_exact;
  RatPoly phi_exact;
  RatPoly psi_sq_exact;
  /// The same three multiplied by the least positive integers that make
  /// them integral (no content removal).
  IntPoly poly;
  IntPoly phi;
  IntPoly psi_sq;
  BigInt poly_factor = 1;
  BigInt phi_factor = 1;
  BigInt psi_sq_factor = 1;
};

/// Psi_0 .. Psi_{nmax+1} for a curve over Q; built once, then read-only.
class DivPolyTable {
 public:
  DivPolyTable(const CurveQ& E, int nmax);

  int nmax() const { return nmax_; }
  const CurveQ& curve() const { return curve_; }
  /// 0 <= n <= nmax.
  DivPoly get(int n) const;
  /// Psi_n for 0 <= n <= nmax + 1, exact.
  const RatPoly& psi(int n) const;
  /// X^3 + aX + b.
  const RatPoly& cubic() const { return cubic_; }

 private:
  CurveQ curve_;
  int nmax_;
  RatPoly cubic_;
  std::vector<RatPoly> psi_;
  // Integral model a' = u^4 a, b' = u^6 b with u = den(a) den(b).
  BigInt u_;
  IntPoly model_cubic_;
  std::vector<IntPoly> model_psi_;
};

DivPoly division_poly(const CurveQ& E, int n);

/// Same recurrences carried out directly in F_q[X].
class DivPolyTableFq {
 public:
  DivPolyTableFq(const CurveFq& E, int nmax);

  const FqPoly& psi(int n) const { return psi_.at(static_cast<std::size_t>(n)); }
  FqPoly phi(int n) const;
  FqPoly psi_sq(int n) const;

 private:
  CurveFq curve_;
  FqPoly cubic_;
  std::vector<FqPoly> psi_;
};

/// x(nP) = phi_n(x) / psi_n^2(x), or nullopt when psi_n^2(x) = 0 (P is n-torsion).
std::optional<Code> x_of_nP(const DivPolyTableFq& table, const CurveFq& E, int n, Code x);
std::optional<BigRat> x_of_nP(const DivPolyTable& table, int n, const BigRat& x);

struct DivHeightRow {
  int n;
  double h_psi;
  double h_phi;
};

/// Heights of the integral forms of Psi_n and phi_n for 1 <= n <= nmax.
std::vector<DivHeightRow> divpoly_height_profile(const CurveQ& E, int nmax);

}  // namespace ffdep
