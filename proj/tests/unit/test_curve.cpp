#include "doctest.h"

#include "ffdep/curve.hpp"
#include "ffdep/ratfunc.hpp"

#include <cmath>

using namespace ffdep;

TEST_CASE("reduction") {
  const CurveQ E = CurveQ::parse("a=0,b=1");
  CHECK_THROWS_AS(reduce_mod_p(E, FieldCtx::make(3)), BadReduction);
  CHECK_NOTHROW(reduce_mod_p(E, FieldCtx::make(5)));
  CHECK_THROWS_AS(reduce_mod_p(CurveQ::parse("a=1/2,b=0"), FieldCtx::make(2)), BadReduction);
  CHECK_THROWS_AS(CurveQ::parse("a=-3,b=2"), DomainError);
  CHECK(CurveQ::parse("a=1/2, b=-3").to_string() == "a=1/2,b=-3");
}

TEST_CASE("group law examples") {
  const CurveFq E = reduce_mod_p(CurveQ::parse("a=0,b=1"), FieldCtx::make(5));
  const PointFq P = PointFq::affine(0, 1);
  CHECK(E.dbl(P) == PointFq::affine(0, 4));
  CHECK(E.scalar_mul(3, P).infinity);
  CHECK(E.scalar_mul(0, P).infinity);
  CHECK(E.point_order(P) == 3);
  CHECK(E.point_order(PointFq::at_infinity()) == 1);
  CHECK(E.point_order(PointFq::affine(2, 3)) == 6);
  CHECK(ord_Ep(0, E).order == 3);
  CHECK(ord_Ep(2, E).order == 6);
}

TEST_CASE("group axioms and order consistency on small curves") {
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    auto F = FieldCtx::make(p);
    for (long a = 0; a < 3; ++a) {
      for (long b = 1; b < 3; ++b) {
        if ((4 * a * a * a + 27 * b * b) % static_cast<long>(p) == 0) continue;
        CurveFq E(F, F->from_int(a), F->from_int(b));
        auto pts = E.affine_points();
        CHECK(E.group_order() == pts.size() + 1);
        for (const auto& P : pts) {
          CHECK(E.on_curve(P));
          const auto n = E.point_order(P);
          CHECK(E.scalar_mul(static_cast<long long>(n), P).infinity);
          CHECK(E.group_order() % n == 0);
          for (const auto& Q : pts) {
            const auto S = E.add(P, Q);
            CHECK(E.on_curve(S));
            CHECK(S == E.add(Q, P));
          }
        }
      }
    }
  }
}

TEST_CASE("point order via the Hasse window matches counting") {
  auto F = FieldCtx::make(10007);
  CurveFq E(F, 3, 7);
  const auto N = E.group_order();
  int checked = 0;
  for (Code x = 0; x < F->q() && checked < 20; ++x) {
    const auto y = F->sqrt(E.rhs(x));
    if (!y) continue;
    const PointFq P = PointFq::affine(x, *y);
    const auto n = E.point_order(P);
    CHECK(N % n == 0);
    CHECK(E.scalar_mul(static_cast<long long>(n), P).infinity);
    ++checked;
  }
}

TEST_CASE("ord_Ep extends the field for non-square right-hand sides") {
  auto F = FieldCtx::make(7);
  CurveFq E(F, 0, 1);
  for (Code x = 0; x < 7; ++x) {
    const auto r = ord_Ep(x, E);
    CHECK(r.extended == !F->is_square(E.rhs(x)));
    CHECK(r.order >= 1);
  }
}

TEST_CASE("division polynomial examples") {
  const CurveQ E = CurveQ::parse("a=-1,b=0");
  CHECK(division_poly(E, 3).poly == parse_int_poly("3*X^4-6*X^2-1"));
  const CurveQ E01 = CurveQ::parse("a=0,b=1");
  CHECK(division_poly(E01, 3).poly == parse_int_poly("3*X^4+12*X"));
  CHECK(height(division_poly(E01, 3).poly).H == 12);
  const DivPoly d5 = division_poly(E01, 5);
  CHECK(d5.poly.degree() == 12);
  CHECK(d5.poly.leading() == 5);
  CHECK(division_poly(E01, 1).poly == parse_int_poly("1"));
  CHECK(division_poly(E01, 0).poly.is_zero());
  CHECK(division_poly(E01, 1).phi == parse_int_poly("X"));
  // phi_2 = X^4 - 2aX^2 - 8bX + a^2.
  CHECK(division_poly(E01, 2).phi == parse_int_poly("X^4-8*X"));
}

TEST_CASE("division polynomial degrees and leading coefficients") {
  const DivPolyTable T(CurveQ::parse("a=2,b=-3"), 60);
  for (int n = 1; n <= 60; ++n) {
    const DivPoly d = T.get(n);
    const int expect = n % 2 ? (n * n - 1) / 2 : (n * n - 4) / 2;
    CHECK(d.poly.degree() == expect);
    CHECK(d.poly.leading() == n);
    CHECK(d.phi.degree() == n * n);
  }
}

TEST_CASE("division polynomials for rational coefficients") {
  // The rescaled recurrence must agree with x(nP) on an exact rational point:
  // y^2 = x^3 - x/4 + 1/4 has P = (0, 1/2), and x(2P) from the tangent line.
  const CurveQ E = CurveQ::parse("a=-1/4,b=1/4");
  const DivPolyTable T(E, 4);
  const BigRat x0 = 0;
  const BigRat y0(1, 2);
  const BigRat lambda = (3 * x0 * x0 + E.a) / (2 * y0);
  const BigRat x2 = lambda * lambda - 2 * x0;
  CHECK(x_of_nP(T, 2, x0) == x2);
  CHECK(T.get(3).poly_factor != 1);
}

TEST_CASE("phi_n and psi_n^2 are coprime") {
  const CurveQ E = CurveQ::parse("a=-1,b=1");
  const DivPolyTable T(E, 12);
  for (int n = 1; n <= 12; ++n) {
    const DivPoly d = T.get(n);
    CHECK(resultant(d.phi, d.psi_sq) != 0);
  }
}

TEST_CASE("x(nP) over F_q agrees with double-and-add") {
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL}) {
    auto F = FieldCtx::make(p);
    CurveFq E(F, 1, 3);
    const DivPolyTableFq T(E, 10);
    for (const auto& P : E.affine_points()) {
      for (int n = 1; n <= 10; ++n) {
        const auto nP = E.scalar_mul(n, P);
        const auto x = x_of_nP(T, E, n, P.x);
        CHECK(x.has_value() == !nP.infinity);
        if (x) CHECK(*x == nP.x);
      }
    }
  }
  auto F5 = FieldCtx::make(5);
  CurveFq E(F5, 0, 1);
  const DivPolyTableFq T(E, 3);
  CHECK(x_of_nP(T, E, 2, 0) == Code{0});
  CHECK(!x_of_nP(T, E, 3, 0).has_value());
  CHECK(x_of_nP(T, E, 1, 4) == Code{4});
}

TEST_CASE("height profile") {
  const auto rows = divpoly_height_profile(CurveQ::parse("a=0,b=1"), 20);
  CHECK(rows[0].h_psi == 0.0);
  CHECK(rows[2].h_psi == doctest::Approx(std::log(12.0)));
}
