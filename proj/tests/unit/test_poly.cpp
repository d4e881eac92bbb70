#include "doctest.h"

#include "ffdep/poly.hpp"
#include "ffdep/ratfunc.hpp"

#include <cmath>
#include <random>

using namespace ffdep;

namespace {

IntPoly P(const char* s) { return parse_int_poly(s); }

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long bound) {
  std::uniform_int_distribution<int> dd(0, max_deg);
  std::uniform_int_distribution<long> cd(-bound, bound);
  const int d = dd(rng);
  std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
  for (auto& x : c) x = cd(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

// prod (X - r_i) for integer roots.
IntPoly from_roots(const std::vector<long>& roots) {
  IntPoly f = IntPoly::constant(1);
  for (long r : roots) f *= IntPoly{-r, 1};
  return f;
}

}  // namespace

TEST_CASE("text format round trip") {
  CHECK(P("3*X^4+6*X^2-1").to_string() == "3*X^4+6*X^2-1");
  CHECK(P(" - X ").to_string() == "-X");
  CHECK(P("0").to_string() == "0");
  CHECK(P("(X-1)^2").to_string() == "X^2-2*X+1");
  CHECK_THROWS_AS(parse_int_poly("X/2"), DomainError);
  CHECK_THROWS_AS(parse_int_poly("1/X"), DomainError);
  CHECK(RatPoly(std::vector<BigRat>{0, BigRat(1, 2)}).to_string() == "1/2*X");
}

TEST_CASE("height examples") {
  auto r = height(P("3*X^4+6*X^2-1"));
  CHECK(r.H == 6);
  CHECK(r.h == doctest::Approx(std::log(6.0)));
  auto one = height(P("1"));
  CHECK(one.H == 1);
  CHECK(one.h == 0.0);
  auto zero = height(IntPoly());
  CHECK(zero.H == 0);
  CHECK(zero.h == 0.0);
  auto circ = height(P("X^2+1"));
  CHECK(circ.mahler_lower == doctest::Approx(0.25));
  CHECK(circ.mahler_upper == doctest::Approx(std::sqrt(3.0)));
  CHECK(mahler_measure_numeric(P("X^2+1")) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("product height bound") {
  std::vector<IntPoly> a{P("X-1"), P("X+1")};
  CHECK(product_height_bound(a) == doctest::Approx(2.0));
  std::vector<IntPoly> b{P("2*X+3")};
  CHECK(product_height_bound(b) == doctest::Approx(std::log(3.0) + 1));
  std::vector<IntPoly> c{P("3*X^4+6*X^2-1"), P("X^2+1")};
  CHECK(log_height(c[0] * c[1]) <= product_height_bound(c));
  CHECK(product_height_bound({}) == 0.0);
  std::vector<IntPoly> z{IntPoly()};
  CHECK_THROWS_AS(product_height_bound(z), DomainError);
}

TEST_CASE("resultant examples") {
  CHECK(resultant(P("X-1"), P("X-2")) == -1);
  CHECK(resultant(P("X^2-1"), P("X^2-4")) == 9);
  const BigInt r = resultant(P("X-1"), P("X-8"));
  CHECK(r == -7);
  CHECK(within_hadamard_bound(r, P("X-1"), P("X-8")));
  CHECK_THROWS_AS(resultant(IntPoly(), P("X")), DomainError);
  CHECK(resultant(P("X^2-1"), P("X-1")) == 0);
}

TEST_CASE("resultant agrees with root products on split polynomials") {
  // Res(c prod(X-r_i), g) = c^deg g prod g(r_i).
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> rd(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long> roots(static_cast<std::size_t>(1 + trial % 5));
    for (auto& r : roots) r = rd(rng);
    const BigInt c = 1 + trial % 3;
    const IntPoly f = from_roots(roots) * c;
    const IntPoly g = random_poly(rng, 6, 20);
    if (g.is_zero()) continue;
    BigInt expect = pow(c, static_cast<unsigned long>(std::max(g.degree(), 0)));
    for (long r : roots) expect *= g.evaluate(BigInt(r));
    CHECK(resultant(f, g) == expect);
  }
}

TEST_CASE("subresultant and Sylvester paths agree; symmetry and multiplicativity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPoly f = random_poly(rng, 10, 50);
    const IntPoly g = random_poly(rng, 10, 50);
    const IntPoly h = random_poly(rng, 4, 10);
    const BigInt rfg = resultant(f, g);
    CHECK(rfg == resultant_sylvester(f, g));
    const int sign = (f.degree() * g.degree()) % 2 ? -1 : 1;
    CHECK(rfg == sign * resultant(g, f));
    CHECK(resultant(f * h, g) == resultant(f, g) * resultant(h, g));
    CHECK(within_hadamard_bound(rfg, f, g));
  }
}

TEST_CASE("squarefree part") {
  CHECK(squarefree_part(P("(X-1)^2*(X+2)")) == P("(X-1)*(X+2)"));
  CHECK(squarefree_part(P("X^2+X+1")) == P("X^2+X+1"));
  CHECK(squarefree_part(P("4*(X-1)^4")) == P("X-1"));
  CHECK_THROWS_AS(squarefree_part(IntPoly()), DomainError);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const IntPoly a = random_poly(rng, 3, 5);
    const IntPoly b = random_poly(rng, 3, 5);
    if (a.degree() < 1 || b.degree() < 0) continue;
    const IntPoly f = a * a * b;
    const IntPoly s = squarefree_part(f);
    CHECK_NOTHROW(divide_exact(f * pow(s.leading(), 20), s));
    CHECK(gcd(s, s.derivative()).degree() == 0);
  }
}

TEST_CASE("gcd") {
  CHECK(gcd(P("X^2-1"), P("X^2-2*X+1")) == P("X-1"));
  CHECK(gcd(P("6*X+6"), P("4*X+4")) == P("X+1"));
  CHECK(gcd(P("X"), P("X+1")) == P("1"));
}

TEST_CASE("valuations") {
  CHECK(vp(9, 3).value == 2);
  CHECK(vp(7, 5).value == 0);
  CHECK(vp(0, 5).infinite);
  CHECK_THROWS_AS(vp(9, 4), DomainError);
}

TEST_CASE("common roots modulo p") {
  CHECK(common_roots_mod_p(P("X-1"), P("X-8"), 7) == 1);
  CHECK(vp(resultant(P("X-1"), P("X-8")), 7).value == 1);
  CHECK(common_roots_mod_p(P("X-1"), P("X-2"), 5) == 0);
  const IntPoly f = P("(X-1)^2");
  const IntPoly g = P("X^2-1");
  CHECK(common_roots_mod_p(f, g, 3) == 1);
  CHECK(vp(resultant(f, g), 3).at_least(1));
  CHECK_THROWS_AS(common_roots_mod_p(P("3*X"), P("6"), 3), DomainError);
}

TEST_CASE("common roots bounded by resultant valuation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const IntPoly f = random_poly(rng, 8, 30);
    const IntPoly g = random_poly(rng, 8, 30);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 31ULL, 97ULL}) {
      const auto fr = f.reduce_mod(p);
      const auto gr = g.reduce_mod(p);
      const bool fz = std::all_of(fr.begin(), fr.end(), [](auto v) { return v == 0; });
      const bool gz = std::all_of(gr.begin(), gr.end(), [](auto v) { return v == 0; });
      if (fz && gz) continue;
      const auto m = common_roots_mod_p(f, g, p);
      CHECK(vp(resultant(f, g), p).at_least(m));
    }
  }
}

TEST_CASE("Kronecker multiplication matches schoolbook") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const IntPoly a = random_poly(rng, 60, 1000000) * pow(BigInt(-7), 30);
    const IntPoly b = random_poly(rng, 60, 1000);
    const IntPoly prod = a * b;
    // Evaluate at several points as an independent check.
    for (long x : {-3L, -1L, 0L, 2L, 5L}) CHECK(prod.evaluate(BigInt(x)) == a.evaluate(BigInt(x)) * b.evaluate(BigInt(x)));
  }
}

TEST_CASE("rational functions") {
  const RatFunc r = parse_ratfunc("X/(X+1)");
  CHECK(r.num() == P("X"));
  CHECK(r.den() == P("X+1"));
  const RatFunc s = parse_ratfunc("(X^2-1)/(2*X-2)");
  CHECK(s.num() == P("X+1"));
  CHECK(s.den() == P("2"));
  CHECK(r.compose(parse_ratfunc("X+1")) == parse_ratfunc("(X+1)/(X+2)"));
  CHECK(parse_ratfunc("X^-1") == parse_ratfunc("1/X"));
  CHECK(parse_ratfunc_list("X, X/(X+1), (X-1)^2").size() == 3);
  CHECK(parse_rational("-3/6") == BigRat(-1, 2));
}
