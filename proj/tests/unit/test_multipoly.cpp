#include "doctest.h"

#include "ffdep/modres.hpp"
#include "ffdep/prs.hpp"

#include <random>

using namespace ffdep;

namespace {

MultiPoly random_poly(std::mt19937_64& rng, int nvars, int terms, unsigned maxdeg) {
  std::vector<MultiPoly::Term> t;
  for (int i = 0; i < terms; ++i) {
    std::vector<unsigned> e(static_cast<std::size_t>(nvars));
    for (auto& x : e) x = static_cast<unsigned>(rng() % (maxdeg + 1));
    t.emplace_back(MultiPoly::pack(e), BigInt(static_cast<long>(rng() % 21) - 10));
  }
  return MultiPoly(nvars, std::move(t));
}

// Evaluate at small integers, an independent check of ring operations.
BigInt eval(const MultiPoly& f, const std::vector<long>& pt) {
  BigInt s = 0;
  for (const auto& [m, c] : f.terms()) {
    BigInt v = c;
    for (int i = 0; i < f.nvars(); ++i) v *= pow(BigInt(pt[static_cast<std::size_t>(i)]), MultiPoly::exponent(m, i));
    s += v;
  }
  return s;
}

}  // namespace

TEST_CASE("multipoly ring operations agree with evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const MultiPoly a = random_poly(rng, 3, 8, 4);
    const MultiPoly b = random_poly(rng, 3, 6, 3);
    const std::vector<long> pt{2, -3, 5};
    CHECK(eval(a + b, pt) == eval(a, pt) + eval(b, pt));
    CHECK(eval(a - b, pt) == eval(a, pt) - eval(b, pt));
    CHECK(eval(a * b, pt) == eval(a, pt) * eval(b, pt));
    if (!b.is_zero()) CHECK((a * b).exact_div(b) == a);
  }
}

TEST_CASE("multipoly term order, serialization and structure") {
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const MultiPoly f = x * x * y - MultiPoly::constant(2, 3) * y * y * y + x;
  CHECK(f.serialize() == "1:2,1\n-3:0,3\n1:1,0\n");
  CHECK(MultiPoly::deserialize(f.serialize()) == f);
  CHECK(f.degree_in(1) == 3);
  CHECK(f.total_degree() == 3);
  const auto c = f.coefficients_in(0);
  REQUIRE(c.size() == 3);
  CHECK(c[2] == y);
  CHECK(MultiPoly::from_coefficients(c, 0) == f);
  CHECK(f.rename({1, 0}, 2) == y * y * x - MultiPoly::constant(2, 3) * x * x * x + y);
  CHECK_THROWS_AS((x + y).exact_div(x), DomainError);
  CHECK((f * BigInt(6)).content() == 6);
}

TEST_CASE("multivariate resultant matches substitution") {
  // Res_Y(Y - x, Y^2 - z) = x^2 - z, with Y as variable 2.
  const MultiPoly x = MultiPoly::variable(3, 0), z = MultiPoly::variable(3, 1), Y = MultiPoly::variable(3, 2);
  const MultiPoly one = MultiPoly::constant(3, 1);
  const MultiPoly r = prs::resultant((Y - x).coefficients_in(2), (Y * Y - z).coefficients_in(2), one);
  CHECK(r == x * x - z);
}

TEST_CASE("product budget") {
  const MultiPoly x = MultiPoly::variable(1, 0);
  const MultiPoly f = x * x + x + MultiPoly::constant(1, 1);
  MultiPoly::BudgetScope scope(4);
  CHECK_THROWS_AS(f * f, BudgetExceeded);
}

TEST_CASE("modular resultant agrees with the subresultant PRS") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int nv = 2 + static_cast<int>(rng() % 3);
    const int var = static_cast<int>(rng() % static_cast<unsigned>(nv));
    const MultiPoly a = random_poly(rng, nv, 1 + static_cast<int>(rng() % 6), 3);
    const MultiPoly b = random_poly(rng, nv, 1 + static_cast<int>(rng() % 6), 3);
    const MultiPoly one = MultiPoly::constant(nv, 1);
    const MultiPoly expect = prs::resultant(a.coefficients_in(var), b.coefficients_in(var), one);
    CHECK(resultant_modular(a, b, var) == expect);
    CHECK(resultant_modular(b, a, var) == prs::resultant(b.coefficients_in(var), a.coefficients_in(var), one));
  }
  // Leading coefficient X_0 vanishes on part of the grid.
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const MultiPoly f = x * y * y + y - x, g = y * y * y - x * x;
  const MultiPoly one = MultiPoly::constant(2, 1);
  CHECK(resultant_modular(f, g, 1) == prs::resultant(f.coefficients_in(1), g.coefficients_in(1), one));
  CHECK_THROWS_AS(resultant_modular(f, g, 1, 3), BudgetExceeded);
}
