#include "doctest.h"

#include "ffdep/field.hpp"

#include <random>
#include <set>

using namespace ffdep;
using Code = FieldCtx::Code;

namespace {

// Order by repeated multiplication; independent of the factored-descent path.
std::uint64_t naive_order(const FieldCtx& F, Code x) {
  std::uint64_t t = 1;
  Code y = x;
  while (y != 1) {
    y = F.mul(y, x);
    ++t;
  }
  return t;
}

}  // namespace

TEST_CASE("context construction") {
  auto F = FieldCtx::parse("7^2");
  CHECK(F->q() == 49);
  CHECK(F->d() == 2);
  CHECK(is_irreducible_mod_p(F->modulus(), 7));
  // Least monic irreducible quadratic mod 7 by code order: X^2 + 1.
  CHECK(F->modulus() == std::vector<std::uint64_t>{1, 0, 1});
  CHECK_THROWS_AS(FieldCtx::make(8, 1), DomainError);
  CHECK_THROWS_AS(FieldCtx::make(65537, 3), BudgetExceeded);
  CHECK(F->format(F->parse_element("[3,4]")) == "[3,4]");
}

TEST_CASE("field axioms on small extensions") {
  for (auto spec : {"5", "7^2", "3^3", "2^4", "13^2"}) {
    auto F = FieldCtx::parse(spec);
    for (Code a = 0; a < F->q(); ++a) {
      if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
      CHECK(F->add(a, F->neg(a)) == 0);
      CHECK(F->pow(a, F->q()) == a);
    }
  }
}

TEST_CASE("multiplicative order") {
  auto F = FieldCtx::make(7);
  CHECK(mult_order(FqElem(F, 2)) == 3);
  CHECK(mult_order(FqElem(F, 1)) == 1);
  CHECK(mult_order(FqElem(F, 3)) == 6);
  CHECK_THROWS_AS(mult_order(FqElem(F, 0)), DomainError);
  for (auto spec : {"101", "5^2", "3^4", "17^2"}) {
    auto G = FieldCtx::parse(spec);
    for (Code x = 1; x < G->q(); ++x) {
      const auto t = mult_order(*G, x);
      CHECK(t == naive_order(*G, x));
      CHECK((G->q() - 1) % t == 0);
    }
  }
}

TEST_CASE("discrete log") {
  auto F = FieldCtx::make(7);
  CHECK(discrete_log(FqElem(F, 3), FqElem(F, 2)) == 2);
  CHECK(discrete_log(FqElem(F, 5), FqElem(F, 1)) == 0);
  CHECK(!discrete_log(FqElem(F, 2), FqElem(F, 3)).has_value());
  auto G = FieldCtx::parse("11^2");
  for (Code b = 1; b < G->q(); b += 7) {
    const auto ord = mult_order(*G, b);
    Code y = 1;
    for (std::uint64_t e = 0; e < ord; ++e) {
      const auto l = discrete_log(*G, b, y);
      REQUIRE(l.has_value());
      CHECK(*l <= e);
      CHECK(G->pow(b, *l) == y);
      y = G->mul(y, b);
    }
  }
}

TEST_CASE("square roots") {
  for (auto spec : {"7", "13", "5^2", "17^2", "3^3"}) {
    auto F = FieldCtx::parse(spec);
    std::set<Code> squares;
    for (Code x = 0; x < F->q(); ++x) squares.insert(F->sqr(x));
    for (Code a = 0; a < F->q(); ++a) {
      const auto r = F->sqrt(a);
      CHECK(r.has_value() == (squares.count(a) == 1));
      if (r) {
        CHECK(F->sqr(*r) == a);
        CHECK(*r <= F->neg(*r));
      }
    }
  }
}

TEST_CASE("roots in context") {
  auto F7 = FieldCtx::make(7);
  CHECK(roots_in_ctx(parse_int_poly("X^2+X+1"), *F7) == std::vector<Code>{2, 4});
  CHECK(roots_in_ctx(parse_int_poly("X-1"), *F7) == std::vector<Code>{1});
  auto F5 = FieldCtx::make(5);
  CHECK(roots_in_ctx(parse_int_poly("X^2+X+1"), *F5).empty());
  CHECK_THROWS_AS(roots_in_ctx(parse_int_poly("7*X"), *F7), DomainError);
  auto F25 = FieldCtx::parse("5^2");
  const auto r = roots_in_ctx(parse_int_poly("X^2+X+1"), *F25);
  CHECK(r.size() == 2);
  // Frobenius closure.
  for (Code a : r) CHECK(std::count(r.begin(), r.end(), F25->pow(a, 5)) == 1);
}

TEST_CASE("large-field root finding matches the splitting structure") {
  auto F = FieldCtx::make(1048583);  // just above 2^20, forces the gcd path
  const IntPoly f = parse_int_poly("(X-3)*(X-1000)*(X+5)*(X^2+1)");
  auto r = roots_in_ctx(f, *F);
  std::vector<Code> expect{3, 1000, F->from_int(-5)};
  // X^2 + 1 splits iff p = 1 mod 4.
  if (F->p() % 4 == 1) {
    const auto s = F->sqrt(F->from_int(-1));
    expect.push_back(*s);
    expect.push_back(F->neg(*s));
  }
  std::sort(expect.begin(), expect.end());
  CHECK(r == expect);
}

TEST_CASE("quadratic extension embedding is a ring map") {
  for (auto spec : {"5", "7^2", "3^2"}) {
    auto F = FieldCtx::parse(spec);
    const auto ext = quadratic_extension(F);
    CHECK(ext.ext->q() == F->q() * F->q());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
      const Code a = rng() % F->q();
      const Code b = rng() % F->q();
      CHECK(ext.embed(F->add(a, b)) == ext.ext->add(ext.embed(a), ext.embed(b)));
      CHECK(ext.embed(F->mul(a, b)) == ext.ext->mul(ext.embed(a), ext.embed(b)));
    }
  }
}

TEST_CASE("cross-context operations are errors") {
  auto A = FieldCtx::make(7);
  auto B = FieldCtx::make(11);
  CHECK_THROWS_AS(FqElem(A, 1) + FqElem(B, 1), DomainError);
}
