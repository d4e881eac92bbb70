#include "doctest.h"

#include "ffdep/relations.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace ffdep;

namespace {

IntPoly P(const std::string& s) { return parse_int_poly(s); }
std::vector<RatFunc> funcs(const std::string& s) { return parse_ratfunc_list(s); }
ExponentVector ev(std::vector<long> e) { return ExponentVector(std::move(e)); }

bool divides(const IntPoly& d, const IntPoly& f) {
  try {
    divide_exact(f, d);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::uint64_t eval_mod(const IntPoly& f, std::uint64_t x, std::uint64_t p) {
  BigInt r = f.evaluate(BigInt(x)) % BigInt(p);
  if (r < 0) r += p;
  return r.get_ui();
}

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(FFDEP_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("canonical boxes") {
  const auto box = canonical_box(2, 1);
  REQUIRE(box.size() == 4);
  CHECK(box[0] == ev({0, 1}));
  CHECK(box[1] == ev({1, -1}));
  CHECK(box[2] == ev({1, 0}));
  CHECK(box[3] == ev({1, 1}));
  CHECK(canonical_box(3, 2).size() == (125 - 1) / 2);
  CHECK(canonical_box(2, 0).empty());
  CHECK(linearly_independent(ev({1, 0}), ev({0, 1})));
  CHECK(!linearly_independent(ev({1, -2}), ev({-2, 4})));
  CHECK(!linearly_independent(ev({3}), ev({1})));
  CHECK(ev({0, -3, 2}).box() == 3);
  CHECK(ev({0, -3, 2}).to_string() == "(0,-3,2)");
}

TEST_CASE("omega parts and relation polynomials") {
  auto [F, G] = omega_parts(funcs("X/(X+1), X-1"), ev({1, -1}));
  CHECK(F == P("X"));
  CHECK(G == P("X^2-1"));
  std::tie(F, G) = omega_parts(funcs("X"), ev({2}));
  CHECK(F == P("X^2"));
  CHECK(G == P("1"));
  std::tie(F, G) = omega_parts(funcs("X, X+1"), ev({1, -2}));
  CHECK(F == P("X"));
  CHECK(G == P("X^2+2*X+1"));

  CHECK(relation_poly(funcs("X, X+1"), ev({1, -2})) == P("-X^2-X-1"));
  CHECK(relation_poly(funcs("X, X+1"), ev({2, 2})) == P("X^2+X-1") * P("X^2+X+1"));
  CHECK(relation_poly(funcs("X"), ev({1})) == P("X-1"));
  CHECK(relation_poly(funcs("X, X+1"), ev({1, -1})) == P("-1"));
  CHECK_THROWS_AS(relation_poly(funcs("X, X^2"), ev({2, -1})), DomainError);
  CHECK_THROWS_AS(omega_parts(funcs("X, X+1"), ev({0, 0})), DomainError);
  CHECK_THROWS_AS(omega_parts(funcs("X"), ev({1, 1})), DomainError);
}

TEST_CASE("omega parts are multiplicative") {
  const auto phis = funcs("X/(X+2), (X-3)^2/(2*X+1), X^2+1");
  std::mt19937_64 rng(3);
  auto draw = [&] {
    ExponentVector k;
    do {
      k = ev({static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3});
    } while (k.is_zero());
    return k;
  };
  for (int t = 0; t < 30; ++t) {
    const ExponentVector k = draw(), k2 = draw();
    const auto [Fk, Gk] = omega_parts(phis, k);
    const auto [Fn, Gn] = omega_parts(phis, k.negated());
    CHECK(Fn == Gk);
    CHECK(Gn == Fk);
    CHECK(Fk * Fn == Gk * Gn);
    ExponentVector sum = k;
    for (std::size_t i = 0; i < 3; ++i) sum.entries[i] += k2[i];
    if (sum.is_zero()) continue;
    const auto [F2, G2] = omega_parts(phis, k2);
    const auto [Fs, Gs] = omega_parts(phis, sum);
    CHECK(Fs * Gk * G2 == Fk * F2 * Gs);
  }
}

TEST_CASE("relation polynomials vanish where the product of powers is 1") {
  const auto phis = funcs("X, X+1, (X-2)/(X+3)");
  for (std::uint64_t p : {31ULL, 37ULL}) {
    const auto F = FieldCtx::make(p);
    for (const auto& k : canonical_box(3, 2)) {
      const IntPoly r = relation_poly(phis, k);
      for (std::uint64_t a = 0; a < p; ++a) {
        Code prod = 1;
        bool skip = false;
        for (std::size_t i = 0; i < 3 && !skip; ++i) {
          const Code n = evaluate(reduce_poly(phis[i].num(), *F), a, *F);
          const Code d = evaluate(reduce_poly(phis[i].den(), *F), a, *F);
          if (n == 0 || d == 0) {
            skip = true;
            break;
          }
          const Code v = F->div(n, d);
          prod = F->mul(prod, k[i] >= 0 ? F->pow(v, static_cast<std::uint64_t>(k[i]))
                                        : F->inv(F->pow(v, static_cast<std::uint64_t>(-k[i]))));
        }
        if (skip || prod != 1) continue;
        CHECK(eval_mod(r, a, p) == 0);
      }
    }
  }
}

TEST_CASE("heights of F_k and G_k stay below the box bound") {
  const auto phis = funcs("X/(X+2), (3*X-5)^2/(2*X+1), X^2+7");
  std::vector<double> w;
  for (const auto& f : phis) {
    w.push_back(std::max(log_height(f.num()) + f.num().degree(), log_height(f.den()) + f.den().degree()));
  }
  for (const auto& k : canonical_box(3, 3)) {
    const auto [F, G] = omega_parts(phis, k);
    double bound = 0.0;
    for (std::size_t i = 0; i < 3; ++i) bound += static_cast<double>(std::labs(k[i])) * w[i];
    CHECK(log_height(F) <= bound + 1e-9);
    CHECK(log_height(G) <= bound + 1e-9);
  }
}

TEST_CASE("theta numerators") {
  const CurveQ E = CurveQ::parse("a=1,b=1");
  CHECK(theta_numerator(E, funcs("X"), ev({3})) == P("3*X^4+6*X^2+12*X-1"));
  CHECK(theta_numerator(E, funcs("X"), ev({1})) == P("1"));
  CHECK(theta_numerator(E, funcs("X"), ev({-3})) == P("3*X^4+6*X^2+12*X-1"));
  // Even multiples keep the 2-torsion factor.
  CHECK(theta_numerator(CurveQ::parse("a=0,b=1"), funcs("X"), ev({2})) == P("X^3+1"));
  // Content is removed: 3X^4 + 12X for a = 0, b = 1.
  CHECK(theta_numerator(CurveQ::parse("a=0,b=1"), funcs("X"), ev({3})) == P("X^4+4*X"));
  CHECK(theta_numerator(E, funcs("X+1"), ev({3})) == P("3*(X+1)^4+6*(X+1)^2+12*(X+1)-1"));
  // Zero components are dropped.
  CHECK(theta_numerator(E, funcs("X, X^2"), ev({0, 3})) == P("3*X^8+6*X^4+12*X^2-1"));
  // sigma_2(x, x + 1) = -1.
  CHECK(theta_numerator(E, funcs("X, X+1"), ev({1, 1})) == P("1"));
  CHECK_THROWS_AS(theta_numerator(E, funcs("X, X"), ev({1, 1})), DomainError);
  CHECK_THROWS_AS(theta_numerator(E, funcs("X"), ev({0})), DomainError);
}

TEST_CASE("theta numerators vanish exactly on dependent points mod p") {
  // y^2 = x^3 + x + 1, P_1 = (alpha, .), P_2 = (alpha^2 + 1, .).
  const CurveQ EQ = CurveQ::parse("a=1,b=1");
  const auto rhos = funcs("X, X^2+1");
  for (std::uint64_t p : {101ULL, 103ULL}) {
    const auto F = FieldCtx::make(p);
    const CurveFq E = reduce_mod_p(EQ, F);
    const auto ext = quadratic_extension(F);
    const CurveFq E2 = E.base_change(ext);
    for (const auto& l : canonical_box(2, 2)) {
      if (l[0] == 0 || l[1] == 0) continue;
      const IntPoly U = theta_numerator(EQ, rhos, l);
      std::uint64_t dependent = 0;
      for (std::uint64_t a = 0; a < p; ++a) {
        std::vector<PointFq> pts;
        for (std::uint64_t x : {a, (a * a + 1) % p}) {
          const Code X = ext.embed(F->from_int(static_cast<long long>(x)));
          pts.push_back(PointFq::affine(X, *ext.ext->sqrt(E2.rhs(X))));
        }
        const PointFq A = E2.scalar_mul(l[0], pts[0]);
        const PointFq B = E2.scalar_mul(l[1], pts[1]);
        if (A.infinity || B.infinity) continue;
        const bool dep = E2.add(A, B).infinity || E2.add(A, E2.neg(B)).infinity;
        dependent += dep;
        CHECK_MESSAGE((eval_mod(U, a, p) == 0) == dep, "p=", p, " l=", l.to_string(), " a=", a);
      }
      (void)dependent;
    }
  }
}

TEST_CASE("theta growth is quadratic in the box") {
  const CurveQ E = CurveQ::parse("a=2,b=-3");
  const auto rhos = funcs("(X+1)/(X-2)");
  double Cdeg = 0.0, Ch = 0.0;
  for (long l = 1; l <= 12; ++l) {
    const IntPoly U = theta_numerator(E, rhos, ev({l}));
    const double d = static_cast<double>(U.degree()) / static_cast<double>(l * l);
    const double h = log_height(U) / static_cast<double>(l * l);
    if (l <= 5) {
      Cdeg = std::max(Cdeg, d);
      Ch = std::max(Ch, h);
    } else {
      CHECK(d <= 2 * Cdeg);
      CHECK(h <= 2 * Ch);
    }
  }
}

TEST_CASE("squarefree reduction") {
  CHECK(squarefree_reduced(P("X^2+X+1") * P("X-5"), P("X^2+X+1")) == P("X-5"));
  CHECK(squarefree_reduced(P("X-1"), P("1")) == P("X-1"));
  CHECK(squarefree_reduced(P("X-1").pow(3), P("X-1")) == P("1"));
  CHECK(squarefree_reduced(P("(X-1)^2*(X+2)^3*(X^2+1)"), P("(X+2)*(X+7)")) == P("(X-1)*(X^2+1)"));
  CHECK_THROWS_AS(squarefree_reduced(IntPoly(), P("1")), DomainError);
  CHECK_THROWS_AS(squarefree_reduced(P("X"), IntPoly()), DomainError);
}

TEST_CASE("candidate W") {
  RelationSystem sys;
  sys.phis = funcs("X, X+1");
  const IntPoly W = candidate_W(sys, 2, 2);
  CHECK(divides(P("X^2+X+1"), W));
  CHECK(squarefree_part(W) == W);
  // m = 1: every pair is dependent, so nothing is collected.
  sys.phis = funcs("X");
  CHECK(candidate_W(sys, 1, 1) == P("1"));
  sys.kind = RelationKind::MultLin;
  CHECK_THROWS_AS(candidate_W(sys, 1, 1), DomainError);
  sys.curve = CurveQ::parse("a=0,b=1");
  sys.rhos = funcs("X");
  // gcd(X^2 - 1, X^3 + 1) = X + 1 is the only common factor for K = L = 3.
  CHECK(candidate_W(sys, 3, 3) == P("X+1"));
}

TEST_CASE("resultant table for (X, X+1)") {
  RelationSystem sys;
  sys.phis = funcs("X, X+1");
  const ResultantTable t = resultant_table(sys, 2, 2);
  bool found = false;
  for (const auto& r : t.records) {
    CHECK(linearly_independent(r.k, r.l));
    CHECK(r.k.is_canonical());
    CHECK(r.l.is_canonical());
    CHECK(r.within_hadamard);
    if (r.k == ev({1, 0}) && r.l == ev({0, 1})) {
      found = true;
      CHECK(r.R == 1);
    }
  }
  CHECK(found);
  CHECK(t.hadamard_ok);
  CHECK(t.records.size() + t.dependent_pairs == 11 * 12);
  REQUIRE(t.J.size() == 2);
  CHECK(t.J[0].value == 1);

  const ResultantTable t1 = resultant_table(sys, 1, 1, 2);
  BigInt T = 1;
  for (const auto& k : canonical_box(2, 1)) {
    const IntPoly f = relation_poly(sys.phis, k);
    if (f.degree() <= 0) continue;
    for (const auto& l : canonical_box(2, 1)) {
      if (!linearly_independent(k, l)) continue;
      T *= abs(resultant_sylvester(f, squarefree_reduced(relation_poly(sys.phis, l), t1.W)));
    }
  }
  CHECK(t1.T == T);
  CHECK(t1.T.get_str() == read_golden("relate_X_X+1_K1_T.txt"));
  CHECK(resultant_table(sys, 1, 1, 1).T == t1.T);
}

TEST_CASE("resultant table for the mixed system") {
  RelationSystem sys;
  sys.kind = RelationKind::MultLin;
  sys.phis = funcs("X");
  sys.curve = CurveQ::parse("a=0,b=1");
  sys.rhos = funcs("X");
  const ResultantTable t = resultant_table(sys, 3, 3);
  CHECK(t.W == P("X+1"));
  CHECK(t.records.size() == 9);
  CHECK(t.T > 1);
  CHECK(t.hadamard_ok);
}
