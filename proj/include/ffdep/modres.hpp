#pragma once

#include "ffdep/multipoly.hpp"

#include <cstddef>

namespace ffdep {

/// Res_var(A, B) with the Sylvester sign convention, computed by evaluating
/// the other variables on a dense grid modulo word-size primes,
/// interpolating, and recombining by CRT. Enough primes are used to cover
/// ||A||_1^deg_var(B) * ||B||_1^deg_var(A), which bounds every coefficient, so
/// the result is exact. The result lives in the same ring with var absent.
/// Throws BudgetExceeded when the grid exceeds max_points.
MultiPoly resultant_modular(const MultiPoly& A, const MultiPoly& B, int var, std::size_t max_points = 30'000'000);

}  // namespace ffdep
