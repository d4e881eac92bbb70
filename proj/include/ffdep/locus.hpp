#pragma once

#include "ffdep/relations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffdep {

/// Least nonzero canonical k (in canonical_box order) with prod x_i^{k_i} = 1
/// and |k_i| <= K. DomainError if some x_i is zero.
std::optional<ExponentVector> is_K_mult_dependent(const std::vector<FqElem>& xs, long K);
/// Same answer computed from discrete logarithms to a fixed generator:
/// sum k_i log x_i = 0 mod q - 1.
std::optional<ExponentVector> is_K_mult_dependent_dlog(const std::vector<FqElem>& xs, long K);

/// Least code generator of F_q^*.
Code primitive_root(const FieldCtx& ctx);

/// A point (alpha, beta) of E over F_{q^2}, with beta the square root of
/// alpha^3 + a alpha + b of least code in F_q when one exists there, and
/// otherwise the least code root in F_{q^2}.
struct LiftedCurve {
  CurveFq base;
  QuadraticExtension ext;
  CurveFq lifted;

  explicit LiftedCurve(const CurveFq& E);
  PointFq lift(Code alpha) const;
};

/// Least canonical k with sum k_i P_i = O and |k_i| <= L.
std::optional<ExponentVector> is_L_linear_dependent_points(const CurveFq& E, const std::vector<PointFq>& pts, long L);
/// Same for the points (alpha_i, beta_i) with canonical beta_i.
std::optional<ExponentVector> is_L_linear_dependent(const std::vector<FqElem>& alphas, const CurveFq& E, long L);

enum class LocusSet { A, B, C, D, E };
std::string to_string(LocusSet s);
LocusSet parse_locus_set(const std::string& text);

struct DependenceWitness {
  enum class Kind { Multiplicative, Elliptic };
  Kind kind = Kind::Multiplicative;
  ExponentVector vector;
  /// Second relation for A and C.
  std::optional<ExponentVector> second;
};

struct LocusElement {
  Code alpha = 0;
  std::vector<DependenceWitness> witnesses;
  /// Root of candidate_W mod p; filled by attach_prediction.
  bool root_of_W = false;
};

struct LocusReport {
  LocusSet set = LocusSet::A;
  std::uint64_t p = 0;
  unsigned d = 1;
  long K = 0;
  long L = 0;
  std::vector<LocusElement> elements;
  /// Zeros and poles skipped, ascending.
  std::vector<Code> excluded;

  bool has_prediction = false;
  std::uint64_t vp_T = 0;
  int deg_W = 0;
  std::uint64_t predicted_bound = 0;
  /// Elements that are not roots of candidate_W.
  std::size_t unexplained = 0;
  /// p divides a constant relation or the content of a relation polynomial;
  /// the counting argument does not apply.
  bool degenerate_prime = false;

  bool within_bound() const { return elements.size() <= predicted_bound; }
};

/// The functions of one locus question.
struct LocusProblem {
  LocusSet set = LocusSet::A;
  std::vector<RatFunc> phis;
  std::vector<RatFunc> rhos;
  std::optional<CurveQ> curve;

  void validate() const;
  /// System whose T and candidate_W bound the set: A -> MULT_MULT on phis,
  /// B -> MULT_LIN, C -> LIN_LIN on rhos, D -> MULT_MULT on phis ++ rhos,
  /// E -> LIN_LIN on the points phis ++ rhos.
  RelationSystem prediction_system() const;
};

/// Exact set over F_{p^d}. Bad reduction of a function or of E raises
/// DomainError (BadReduction for E); boxes above the budget raise
/// BudgetExceeded.
LocusReport enumerate(const LocusProblem& problem, const FieldPtr& ctx, long K, long L, unsigned jobs = 1);

LocusReport enumerate_A(const std::vector<RatFunc>& phis, const FieldPtr& ctx, long K, long L, unsigned jobs = 1);
LocusReport enumerate_B(const std::vector<RatFunc>& phis, const std::vector<RatFunc>& rhos, const CurveQ& E,
                        const FieldPtr& ctx, long K, long L, unsigned jobs = 1);
LocusReport enumerate_C(const std::vector<RatFunc>& rhos, const CurveQ& E, const FieldPtr& ctx, long K, long L,
                        unsigned jobs = 1);
LocusReport enumerate_D(const std::vector<RatFunc>& phis, const std::vector<RatFunc>& rhos, const FieldPtr& ctx,
                        long K, long L, unsigned jobs = 1);
LocusReport enumerate_E(const std::vector<RatFunc>& phis, const std::vector<RatFunc>& rhos, const CurveQ& E,
                        const FieldPtr& ctx, long K, long L, unsigned jobs = 1);

/// Fills the prediction fields from a table of the problem's
/// prediction_system with the same K, L.
void attach_prediction(LocusReport& report, const ResultantTable& table);

enum class SweepMode { MultMult, MultLin, LinLin };
std::string to_string(SweepMode m);

struct SweepRow {
  std::uint64_t p = 0;
  long t = 0;
  /// alpha with max(order of phi(alpha), order of rho(alpha)) <= t.
  std::vector<Code> exceptional;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> orders;
  /// v_p(T) + deg candidate_W for the matching two-function set with
  /// K = L = t, when available.
  std::optional<std::uint64_t> predicted_bound;
};

struct SweepReport {
  SweepMode mode = SweepMode::MultMult;
  double c = 1.0;
  double e = 0.5;
  std::vector<SweepRow> rows;
  /// Primes skipped for bad reduction.
  std::vector<std::uint64_t> skipped;
};

/// Orders are multiplicative for phi (and rho without a curve); with a curve,
/// rho(alpha) is read as a point (MULT_LIN), and with linear_phi as well phi
/// (LIN_LIN). Threshold t(p) = floor(c (log p)^e) unless fixed_t is given.
SweepReport order_sweep(const RatFunc& phi, const RatFunc& rho, const std::optional<CurveQ>& E, std::uint64_t pmax,
                        double c = 1.0, double e = 0.5, std::optional<long> fixed_t = std::nullopt,
                        bool linear_phi = false, bool with_prediction = true, std::uint64_t pmin = 2,
                        unsigned jobs = 1);

}  // namespace ffdep
