#include "doctest.h"

#include "ffdep/locus.hpp"

#include <random>

using namespace ffdep;

namespace {

std::vector<RatFunc> funcs(const std::string& s) { return parse_ratfunc_list(s); }
ExponentVector ev(std::vector<long> e) { return ExponentVector(std::move(e)); }

std::vector<FqElem> elems(const FieldPtr& F, std::vector<long long> v) {
  std::vector<FqElem> out;
  for (auto x : v) out.emplace_back(F, F->from_int(x));
  return out;
}

Code power_product(const FieldCtx& F, const std::vector<Code>& xs, const ExponentVector& k) {
  Code prod = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Code y = F.pow(xs[i], static_cast<std::uint64_t>(std::labs(k[i])));
    prod = F.mul(prod, k[i] >= 0 ? y : F.inv(y));
  }
  return prod;
}

}  // namespace

TEST_CASE("multiplicative dependence examples") {
  const auto F7 = FieldCtx::make(7);
  // Canonical order meets (1,-2) before (2,-1); both satisfy the relation.
  CHECK(is_K_mult_dependent(elems(F7, {2, 4}), 2) == ev({1, -2}));
  CHECK(is_K_mult_dependent(elems(F7, {1}), 1) == ev({1}));
  CHECK(!is_K_mult_dependent(elems(F7, {3}), 2));
  CHECK_THROWS_AS(is_K_mult_dependent(elems(F7, {3, 0}), 2), DomainError);
  CHECK(primitive_root(*F7) == 3);
}

TEST_CASE("box search and discrete logs agree") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t ps[] = {101, 257, 1009, 7, 9973};
    const std::uint64_t p = ps[rng() % 5];
    const auto F = (t % 7 == 0 && p < 200) ? FieldCtx::make(p, 2) : FieldCtx::make(p);
    const std::size_t m = 1 + rng() % 3;
    const long K = 1 + static_cast<long>(rng() % 4);
    std::vector<FqElem> xs;
    for (std::size_t i = 0; i < m; ++i) xs.emplace_back(F, 1 + rng() % (F->q() - 1));
    const auto a = is_K_mult_dependent(xs, K);
    CHECK(a == is_K_mult_dependent_dlog(xs, K));
    if (a) {
      std::vector<Code> codes;
      for (const auto& x : xs) codes.push_back(x.code());
      CHECK(power_product(*F, codes, *a) == 1);
    }
  }
}

TEST_CASE("linear dependence examples") {
  const auto F5 = FieldCtx::make(5);
  const CurveFq E(F5, 0, 1);
  CHECK(is_L_linear_dependent_points(E, {PointFq::affine(0, 1), PointFq::affine(0, 4)}, 1) == ev({1, 1}));
  CHECK(is_L_linear_dependent(elems(F5, {0}), E, 3) == ev({3}));
  CHECK(!is_L_linear_dependent(elems(F5, {0}), E, 2));
  // Canonical beta is the same for both entries, so P - P = O is found.
  CHECK(is_L_linear_dependent(elems(F5, {0, 0}), E, 1) == ev({1, -1}));
}

TEST_CASE("linear dependence does not depend on the choice of beta") {
  const auto F = FieldCtx::make(31);
  const CurveFq E(F, F->from_int(2), F->from_int(3));
  const LiftedCurve C(E);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    std::vector<PointFq> pts;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(C.lift(rng() % 31));
    const auto base = is_L_linear_dependent_points(C.lifted, pts, 3);
    for (std::size_t i = 0; i < n; ++i) {
      auto flipped = pts;
      flipped[i] = C.lifted.neg(flipped[i]);
      const auto w = is_L_linear_dependent_points(C.lifted, flipped, 3);
      CHECK(base.has_value() == w.has_value());
      if (w) {
        PointFq S = PointFq::at_infinity();
        for (std::size_t j = 0; j < n; ++j) S = C.lifted.add(S, C.lifted.scalar_mul((*w)[j], flipped[j]));
        CHECK(S.infinity);
      }
    }
  }
}

TEST_CASE("set A examples") {
  const auto phis = funcs("X, X+1");
  const auto rep = enumerate_A(phis, FieldCtx::make(7), 2, 2);
  bool found = false;
  for (const auto& el : rep.elements) {
    if (el.alpha != 2) continue;
    found = true;
    REQUIRE(el.witnesses.size() == 1);
    CHECK(el.witnesses[0].vector == ev({1, -2}));
    CHECK(el.witnesses[0].second == ev({2, 2}));
  }
  CHECK(found);
  CHECK(rep.excluded == std::vector<Code>{0, 6});
  CHECK(enumerate_A(funcs("X"), FieldCtx::make(11), 1, 1).elements.empty());
  CHECK_THROWS_AS(enumerate_A(funcs("X/(X-1), 1/(7*X)"), FieldCtx::make(7), 1, 1), DomainError);
}

TEST_CASE("witnesses replay exactly") {
  const auto phis = funcs("X, X+1, (X-2)/(X+3)");
  for (unsigned d : {1U, 2U}) {
    const auto F = FieldCtx::make(d == 1 ? 61 : 7, d);
    const auto rep = enumerate_A(phis, F, 2, 2, 2);
    CHECK(!rep.elements.empty());
    for (const auto& el : rep.elements) {
      std::vector<Code> xs;
      for (const auto& f : phis) {
        xs.push_back(F->div(evaluate(reduce_poly(f.num(), *F), el.alpha, *F),
                            evaluate(reduce_poly(f.den(), *F), el.alpha, *F)));
      }
      const auto& w = el.witnesses.at(0);
      CHECK(linearly_independent(w.vector, *w.second));
      CHECK(power_product(*F, xs, w.vector) == 1);
      CHECK(power_product(*F, xs, *w.second) == 1);
    }
  }
}

TEST_CASE("set B example and brute force") {
  const CurveQ E = CurveQ::parse("a=0,b=1");
  const auto rep = enumerate_B(funcs("X"), funcs("X"), E, FieldCtx::make(5), 3, 3);
  bool has4 = false;
  for (const auto& el : rep.elements) {
    if (el.alpha == 4) {
      has4 = true;
      CHECK(el.witnesses[0].vector == ev({2}));
      CHECK(el.witnesses[1].vector == ev({2}));
    }
  }
  CHECK(has4);
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL, 31ULL}) {
    const auto F = FieldCtx::make(p);
    const CurveFq Ep = reduce_mod_p(E, F);
    std::vector<Code> expect;
    for (Code a = 1; a < p; ++a) {
      if (mult_order(*F, a) <= 3 && ord_Ep(a, Ep).order <= 3) expect.push_back(a);
    }
    std::vector<Code> got;
    for (const auto& el : enumerate_B(funcs("X"), funcs("X"), E, F, 3, 3).elements) got.push_back(el.alpha);
    CHECK(got == expect);
  }
}

TEST_CASE("sets C, D, E") {
  const CurveQ E = CurveQ::parse("a=1,b=1");
  const auto F = FieldCtx::make(23);
  const auto c = enumerate_C(funcs("X, X+1"), E, F, 2, 2);
  for (const auto& el : c.elements) CHECK(linearly_independent(el.witnesses[0].vector, *el.witnesses[0].second));
  const auto d = enumerate_D(funcs("X"), funcs("X+1"), F, 3, 3);
  for (const auto& el : d.elements) {
    CHECK(mult_order(*F, el.alpha) <= 3);
    CHECK(mult_order(*F, F->add(el.alpha, 1)) <= 3);
  }
  const auto e = enumerate_E(funcs("X"), funcs("X+1"), E, F, 2, 2);
  const CurveFq Ep = reduce_mod_p(E, F);
  std::size_t brute = 0;
  for (Code a = 0; a < 23; ++a) brute += ord_Ep(a, Ep).order <= 2 && ord_Ep(F->add(a, 1), Ep).order <= 2;
  CHECK(e.elements.size() == brute);
  CHECK_THROWS_AS(enumerate({LocusSet::C, funcs("X"), funcs("X"), E}, F, 1, 1), DomainError);
}

TEST_CASE("set A is explained by candidate_W and T") {
  const auto phis = funcs("X, X+1");
  RelationSystem sys;
  sys.phis = phis;
  const auto table = resultant_table(sys, 2, 2);
  for (std::uint64_t p : primes_up_to(150)) {
    auto rep = enumerate_A(phis, FieldCtx::make(p), 2, 2);
    attach_prediction(rep, table);
    CHECK(!rep.degenerate_prime);
    CHECK(rep.within_bound());
    if (rep.vp_T == 0) CHECK(rep.unexplained == 0);
  }
}

TEST_CASE("order sweep") {
  const auto phi = parse_ratfunc("X");
  const auto rho = parse_ratfunc("X+1");
  const auto r = order_sweep(phi, rho, std::nullopt, 7, 1.0, 0.5, 2L, false, false, 7);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].exceptional.empty());
  const auto z = order_sweep(phi, rho, std::nullopt, 50, 1.0, 0.5, 0L, false, false);
  for (const auto& row : z.rows) CHECK(row.exceptional.empty());
  const auto s = order_sweep(phi, rho, std::nullopt, 300, 1.0, 0.5, 3L, false, true, 2, 2);
  for (const auto& row : s.rows) {
    REQUIRE(row.predicted_bound);
    CHECK(row.exceptional.size() <= *row.predicted_bound);
    for (auto [o1, o2] : row.orders) CHECK(std::max(o1, o2) <= 3);
  }
  const auto lin = order_sweep(phi, rho, CurveQ::parse("a=0,b=1"), 100, 1.0, 0.5, 3L, false, true);
  CHECK(!lin.skipped.empty());
  CHECK(lin.mode == SweepMode::MultLin);
}
