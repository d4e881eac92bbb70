#pragma once

#include "ffdep/curve.hpp"
#include "ffdep/ratfunc.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ffdep {

struct ExponentVector {
  std::vector<long> entries;

  ExponentVector() = default;
  explicit ExponentVector(std::vector<long> e) : entries(std::move(e)) {}

  std::size_t size() const { return entries.size(); }
  long operator[](std::size_t i) const { return entries[i]; }
  /// max |k_i|.
  long box() const;
  bool is_zero() const;
  /// First nonzero entry positive.
  bool is_canonical() const;
  ExponentVector negated() const;
  /// "(1,-2)".
  std::string to_string() const;
  bool operator==(const ExponentVector&) const = default;
};

/// Nonzero canonical vectors of length dim with entries in [-B, B], in
/// lexicographic order (entry 0 most significant).
std::vector<ExponentVector> canonical_box(std::size_t dim, long B);

/// Rank of the 2 x m integer matrix with rows k, l equals 2.
bool linearly_independent(const ExponentVector& k, const ExponentVector& l);

enum class RelationKind { MultMult, MultLin, LinLin };

std::string to_string(RelationKind kind);
RelationKind parse_relation_kind(const std::string& text);

/// MultMult uses phis only; MultLin pairs exponents on phis with
/// coefficients on the points (rho_i(X), .); LinLin uses rhos only.
struct RelationSystem {
  std::vector<RatFunc> phis;
  RelationKind kind = RelationKind::MultMult;
  std::optional<CurveQ> curve;
  std::vector<RatFunc> rhos;

  /// DomainError when the fields do not fit the kind.
  void validate() const;
};

/// (F_k, G_k) with phi_i = f_i / g_i in lowest terms:
/// F_k = prod_{k_i>0} f_i^{k_i} prod_{k_i<0} g_i^{-k_i}, G_k the other half.
std::pair<IntPoly, IntPoly> omega_parts(const std::vector<RatFunc>& phis, const ExponentVector& k);

/// F_k - G_k. DomainError when it vanishes identically (the phi_i are then
/// multiplicatively dependent). A constant result is returned as is.
IntPoly relation_poly(const std::vector<RatFunc>& phis, const ExponentVector& k);

/// Primitive numerator, positive leading coefficient, of
///   Theta_l = T_{|l|} o rho                          (one nonzero entry)
///   Theta_l = sigma_r(x(l_i P) o rho_i : l_i != 0)   (r >= 2 nonzero entries)
/// where T_m = Psi_m for odd m and (X^3 + aX + b) Psi_m for even m, so that
/// its roots are exactly the x with m(x, y) = O. DomainError when Theta_l
/// vanishes identically.
IntPoly theta_numerator(const CurveQ& E, const std::vector<RatFunc>& rhos, const ExponentVector& l);

/// Squarefree part of f with every factor shared with W removed.
IntPoly squarefree_reduced(const IntPoly& f, const IntPoly& W);

/// Relation polynomials attached to one side of a system: F_k - G_k for
/// multiplicative sides, Theta numerators for linear ones.
struct RelationSide {
  std::vector<ExponentVector> vectors;
  std::vector<IntPoly> polys;
};

/// Left side (box K) and right side (box L) of a system.
std::pair<RelationSide, RelationSide> relation_sides(const RelationSystem& system, long K, long L);

/// Primitive squarefree product of the gcds of the left and right relation
/// polynomials over independent canonical pairs of the boxes.
IntPoly candidate_W(const RelationSystem& system, long K, long L);

struct ResultantRecord {
  ExponentVector k;
  ExponentVector l;
  BigInt R;
  /// log |R|.
  double logR = 0.0;
  double log_hadamard = 0.0;
  bool within_hadamard = true;
};

struct ConstantRelation {
  ExponentVector k;
  /// |F_k - G_k|.
  BigInt value;
};

struct ResultantTable {
  RelationKind kind = RelationKind::MultMult;
  long K = 0;
  long L = 0;
  IntPoly W;
  /// Canonical pairs in lexicographic (k, l) order.
  std::vector<ResultantRecord> records;
  std::size_t dependent_pairs = 0;
  /// Product of |R| over canonical pairs. The product over the full boxes
  /// (signs included) is T^4.
  BigInt T = 1;
  double logT = 0.0;
  /// Constant relation polynomials on either side.
  std::vector<ConstantRelation> J;
  /// Product of the contents above 1 of all relation polynomials.
  BigInt content_product = 1;
  double max_logR = 0.0;
  double ratio_KL = 0.0;
  double ratio_KL2 = 0.0;
  double ratio_K2L2 = 0.0;
  bool hadamard_ok = true;

  /// Product of the J values.
  BigInt J_product() const;
};

/// R_{k,l} = Res(left_k, squarefree_reduced(right_l, W)) over independent
/// canonical pairs; pairs with a constant left polynomial go to J. An R of
/// zero throws std::logic_error.
ResultantTable resultant_table(const RelationSystem& system, long K, long L, unsigned jobs = 1);

}  // namespace ffdep
