#pragma once

#include "ffdep/curve.hpp"
#include "ffdep/multipoly.hpp"

#include <optional>
#include <vector>

namespace ffdep {

/// Default cap on the interpolation grid of a single resultant step. sigma_6
/// needs 17^6 points; sigma_7 needs 33^7 and is refused.
inline constexpr std::size_t kSummationBudget = 30'000'000;

/// sigma_n in variables X_1..X_n (indices 0..n-1) for y^2 = x^3 + ax + b.
/// Built by the resultant recursion with split k (default floor((n-1)/2),
/// otherwise 1 <= k <= n-3); the same canonical split is used for the
/// smaller factors. Each resultant is taken by modular evaluation and
/// interpolation. After each step the integer content is removed and the
/// lex-leading coefficient made positive.
MultiPoly summation_poly(const CurveQ& E, int n, std::optional<int> split = std::nullopt,
                         std::size_t budget = kSummationBudget);

/// Content-free, lex-leading coefficient positive.
MultiPoly normalize_summation(MultiPoly f);

/// f(X_perm(0), ...) == f, checked term by term without building a copy;
/// variable i is sent to perm[i].
bool invariant_under_permutation(const MultiPoly& f, const std::vector<int>& perm);

/// Same polynomial with variables i and j exchanged.
MultiPoly swap_variables(const MultiPoly& f, int i, int j);

struct ZeroSetReport {
  std::uint64_t q = 0;
  int n = 0;
  std::uint64_t tuples = 0;
  /// Tuples where sigma_n vanishes.
  std::uint64_t zeros = 0;
  /// Tuples where some sign choice sums to O.
  std::uint64_t point_sums = 0;
  std::uint64_t mismatches = 0;
  /// Up to 10 mismatching tuples, as codes.
  std::vector<std::vector<Code>> counterexamples;
};

/// Exhaustive check over F_q^n that sigma_n vanishes exactly on x-coordinates
/// of points (in E(F_{q^2})) that sum to O under some sign choice. sigma_n is
/// built over Z from the least non-negative lifts of a and b, so only prime
/// fields are accepted. Requires q^n <= 10^7.
ZeroSetReport verify_zero_set(const CurveFq& E, int n, unsigned jobs = 1);
/// Same with a caller-supplied sigma (any integer lift of E).
ZeroSetReport verify_zero_set(const CurveFq& E, int n, const MultiPoly& sigma, unsigned jobs = 1);

/// Point-side predicate alone: some choice of y_i in F_{q^2} with sum O.
bool sums_to_zero_for_some_signs(const CurveFq& E, const std::vector<Code>& xs);

struct SummationHeightRow {
  int n = 0;
  std::size_t terms = 0;
  BigInt H = 0;
  /// log H.
  double h = 0.0;
  /// log h / n for n >= 3, otherwise 0.
  double log_h_over_n = 0.0;
};

/// Heights of sigma_2 .. sigma_nmax, nmax <= 7.
std::vector<SummationHeightRow> summation_height_profile(const CurveQ& E, int nmax,
                                                         std::size_t budget = kSummationBudget);

}  // namespace ffdep
