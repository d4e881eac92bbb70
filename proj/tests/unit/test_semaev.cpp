#include "doctest.h"

#include "ffdep/semaev.hpp"

using namespace ffdep;

namespace {

BigInt eval(const MultiPoly& f, const std::vector<BigInt>& pt) {
  BigInt s = 0;
  for (const auto& [m, c] : f.terms()) {
    BigInt v = c;
    for (int i = 0; i < f.nvars(); ++i) v *= pow(pt[static_cast<std::size_t>(i)], MultiPoly::exponent(m, i));
    s += v;
  }
  return s;
}

std::uint64_t eval_mod(const MultiPoly& f, const std::vector<std::uint64_t>& pt, std::uint64_t p) {
  std::vector<BigInt> v(pt.begin(), pt.end());
  const BigInt r = eval(f, v) % BigInt(p);
  return r < 0 ? BigInt(r + BigInt(p)).get_ui() : r.get_ui();
}

}  // namespace

TEST_CASE("small summation polynomials") {
  const CurveQ E = CurveQ::parse("a=0,b=1");
  CHECK(summation_poly(E, 2).serialize() == "1:1,0\n-1:0,1\n");
  CHECK_THROWS_AS(summation_poly(E, 1), DomainError);
  const MultiPoly s3 = summation_poly(E, 3);
  // sigma_3(0, 0, X_3) = -4 X_3.
  for (long x3 = -3; x3 <= 3; ++x3) CHECK(eval(s3, {0, 0, x3}) == -4 * x3);
  const MultiPoly s4 = summation_poly(E, 4);
  for (int i = 0; i < 4; ++i) CHECK(s4.degree_in(i) == 4);
}

TEST_CASE("sigma_3 for rational coefficients matches the cleared formula") {
  // 12 sigma_3 for a = 1/2, b = 1/3, expanded by hand.
  const int N = 3;
  const MultiPoly X1 = MultiPoly::variable(N, 0), X2 = MultiPoly::variable(N, 1), X3 = MultiPoly::variable(N, 2);
  auto C = [](long c) { return MultiPoly::constant(N, c); };
  const MultiPoly s = X1 + X2, m = X1 * X2, d = X1 - X2;
  const MultiPoly f = C(12) * d * d * X3 * X3 - (C(24) * s * m + C(12) * s + C(16)) * X3 + C(12) * m * m - C(12) * m +
                      C(3) - C(16) * s;
  CHECK(summation_poly(CurveQ::parse("a=1/2,b=1/3"), 3) == normalize_summation(f));
}

TEST_CASE("summation polynomials vanish on rational point sums") {
  // y^2 = x^3 + 1: P = (2, 3) has order 6, 2P = (0, 1), 3P = (-1, 0).
  const CurveQ E = CurveQ::parse("a=0,b=1");
  const MultiPoly s4 = summation_poly(E, 4);
  CHECK(eval(s4, {2, 2, 2, -1}) == 0);  // P + P + P - 3P
  CHECK(eval(s4, {2, 0, 2, 0}) == 0);   // P + 2P - P - 2P
  CHECK(eval(s4, {2, 2, 2, 0}) != 0);   // +-P +-P +-P +-2P is never O
  const MultiPoly s5 = summation_poly(E, 5);
  CHECK(eval(s5, {2, 2, 2, 2, 0}) == 0);  // P + P + P + P - 4P with x(4P) = 0
}

TEST_CASE("symmetry and partial degrees") {
  const CurveQ E = CurveQ::parse("a=-1,b=1");
  for (int n = 3; n <= 5; ++n) {
    const MultiPoly s = summation_poly(E, n);
    for (int i = 0; i < n; ++i) {
      CHECK(s.degree_in(i) == (1U << (n - 2)));
      for (int j = i + 1; j < n; ++j) {
        CHECK(swap_variables(s, i, j) == s);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) perm[static_cast<std::size_t>(t)] = t;
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        CHECK(invariant_under_permutation(s, perm));
      }
    }
  }
}

TEST_CASE("split independence") {
  const CurveQ E = CurveQ::parse("a=2,b=-3");
  CHECK(summation_poly(E, 5, 1) == summation_poly(E, 5, 2));
  CHECK_THROWS_AS(summation_poly(E, 5, 3), DomainError);
}

TEST_CASE("zero set against point sums") {
  auto F5 = FieldCtx::make(5);
  const CurveFq E(F5, 0, 1);
  const MultiPoly s3 = summation_poly(CurveQ::parse("a=0,b=1"), 3);
  CHECK(sums_to_zero_for_some_signs(E, {0, 0, 0}));
  CHECK((eval_mod(s3, {0, 0, 0}, 5) == 0));
  CHECK(sums_to_zero_for_some_signs(E, {1, 2, 3}) == (eval_mod(s3, {1, 2, 3}, 5) == 0));
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    auto F = FieldCtx::make(p);
    for (auto [a, b] : {std::pair<long, long>{0, 1}, {1, 3}, {-1, 1}}) {
      if ((4 * a * a * a + 27 * b * b) % static_cast<long>(p) == 0) continue;
      const CurveFq C(F, F->from_int(a), F->from_int(b));
      for (int n : {2, 3, 4}) {
        if (n == 4 && p > 7) continue;
        const auto rep = verify_zero_set(C, n, 2);
        CHECK(rep.tuples == (n == 2 ? p * p : n == 3 ? p * p * p : p * p * p * p));
        CHECK(rep.mismatches == 0);
        CHECK(rep.zeros > 0);
      }
    }
  }
  CHECK_THROWS_AS(verify_zero_set(CurveFq(FieldCtx::make(7, 2), 1, 1), 3), DomainError);
  CHECK_THROWS_AS(verify_zero_set(CurveFq(FieldCtx::make(101), 1, 1), 4), BudgetExceeded);
}

TEST_CASE("summation height profile") {
  const auto rows = summation_height_profile(CurveQ::parse("a=0,b=1"), 4);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].H == 1);
  CHECK(rows[0].h == 0.0);
  // Displayed sigma_3 at a = 0, b = 1: largest coefficient is the 4 in 4b(X_1 + X_2).
  CHECK(rows[1].H == 4);
  CHECK(rows[2].H > rows[1].H);
}

TEST_CASE("permutation check detects asymmetry") {
  const MultiPoly x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1);
  const MultiPoly f = x * x + y;
  CHECK(!invariant_under_permutation(f, {1, 0, 2}));
  CHECK(invariant_under_permutation(f, {0, 1, 2}));
  CHECK(invariant_under_permutation(x * y + x + y, {1, 0, 2}));
}
