#include "ffdep/locus.hpp"

#include "ffdep/parallel.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ffdep {

namespace {

constexpr double kEnumerationBudget = 1e8;

struct ReducedFunc {
  FqPoly num;
  FqPoly den;
};

ReducedFunc reduce_func(const RatFunc& f, const FieldCtx& F, bool allow_zero) {
  ReducedFunc r{reduce_poly(f.num(), F), reduce_poly(f.den(), F)};
  if (r.den.empty()) throw DomainError("denominator of " + f.to_string() + " vanishes mod " + std::to_string(F.p()));
  if (!allow_zero && r.num.empty()) throw DomainError(f.to_string() + " reduces to zero mod " + std::to_string(F.p()));
  return r;
}

std::vector<ReducedFunc> reduce_all(const std::vector<RatFunc>& fs, const FieldCtx& F, bool allow_zero) {
  std::vector<ReducedFunc> out;
  for (const auto& f : fs) out.push_back(reduce_func(f, F, allow_zero));
  return out;
}

// Value at alpha; nullopt at a pole, or at a zero when zeros are excluded.
std::optional<Code> value_at(const ReducedFunc& f, Code alpha, const FieldCtx& F, bool exclude_zero) {
  const Code d = evaluate(f.den, alpha, F);
  if (d == 0) return std::nullopt;
  const Code n = evaluate(f.num, alpha, F);
  if (exclude_zero && n == 0) return std::nullopt;
  return F.div(n, d);
}

// Indices into box of the vectors with prod x_i^{k_i} = 1.
std::vector<std::size_t> mult_relations(const FieldCtx& F, const std::vector<Code>& xs,
                                        const std::vector<ExponentVector>& box, long B, bool first_only) {
  const std::size_t m = xs.size();
  std::vector<std::vector<Code>> pw(m, std::vector<Code>(static_cast<std::size_t>(2 * B + 1)));
  for (std::size_t i = 0; i < m; ++i) {
    const Code inv = F.inv(xs[i]);
    pw[i][static_cast<std::size_t>(B)] = 1;
    for (long j = 1; j <= B; ++j) {
      pw[i][static_cast<std::size_t>(B + j)] = F.mul(pw[i][static_cast<std::size_t>(B + j - 1)], xs[i]);
      pw[i][static_cast<std::size_t>(B - j)] = F.mul(pw[i][static_cast<std::size_t>(B - j + 1)], inv);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < box.size(); ++t) {
    Code prod = 1;
    for (std::size_t i = 0; i < m; ++i) prod = F.mul(prod, pw[i][static_cast<std::size_t>(B + box[t][i])]);
    if (prod == 1) {
      out.push_back(t);
      if (first_only) break;
    }
  }
  return out;
}

std::vector<std::size_t> linear_relations(const CurveFq& E, const std::vector<PointFq>& pts,
                                          const std::vector<ExponentVector>& box, long B, bool first_only) {
  const std::size_t n = pts.size();
  std::vector<std::vector<PointFq>> mult(n);
  for (std::size_t i = 0; i < n; ++i) {
    mult[i].push_back(PointFq::at_infinity());
    for (long j = 1; j <= B; ++j) mult[i].push_back(E.add(mult[i].back(), pts[i]));
  }
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < box.size(); ++t) {
    PointFq S = PointFq::at_infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const long k = box[t][i];
      if (k == 0) continue;
      const PointFq& M = mult[i][static_cast<std::size_t>(std::labs(k))];
      S = E.add(S, k > 0 ? M : E.neg(M));
    }
    if (S.infinity) {
      out.push_back(t);
      if (first_only) break;
    }
  }
  return out;
}

// First (k, l) in lexicographic order with k, l independent.
std::optional<std::pair<std::size_t, std::size_t>> independent_pair(const std::vector<std::size_t>& ks,
                                                                    const std::vector<ExponentVector>& kbox,
                                                                    const std::vector<std::size_t>& ls,
                                                                    const std::vector<ExponentVector>& lbox) {
  for (std::size_t i : ks) {
    for (std::size_t j : ls) {
      if (linearly_independent(kbox[i], lbox[j])) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

void check_budget(std::size_t box, std::uint64_t q) {
  if (static_cast<double>(box) * static_cast<double>(q) > kEnumerationBudget) {
    throw BudgetExceeded("enumeration exceeds |box| * q <= 1e8");
  }
}

}  // namespace

Code primitive_root(const FieldCtx& F) {
  if (F.q() == 2) return 1;
  for (Code g = 1; g < F.q(); ++g) {
    bool ok = true;
    for (const auto& [r, e] : F.unit_group_factors()) {
      if (F.pow(g, (F.q() - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

std::optional<ExponentVector> is_K_mult_dependent(const std::vector<FqElem>& xs, long K) {
  if (xs.empty()) return std::nullopt;
  const FieldPtr& F = xs[0].ctx();
  std::vector<Code> codes;
  for (const auto& x : xs) {
    if (!x.ctx()->same_field(*F)) throw DomainError("elements from different fields");
    if (x.is_zero()) throw DomainError("zero has no multiplicative relations");
    codes.push_back(x.code());
  }
  const auto box = canonical_box(xs.size(), K);
  const auto hit = mult_relations(*F, codes, box, K, true);
  if (hit.empty()) return std::nullopt;
  return box[hit[0]];
}

std::optional<ExponentVector> is_K_mult_dependent_dlog(const std::vector<FqElem>& xs, long K) {
  if (xs.empty()) return std::nullopt;
  const FieldPtr& F = xs[0].ctx();
  const Code g = primitive_root(*F);
  const std::uint64_t N = F->q() - 1;
  std::vector<std::uint64_t> logs;
  for (const auto& x : xs) {
    if (x.is_zero()) throw DomainError("zero has no multiplicative relations");
    logs.push_back(*discrete_log(*F, g, x.code()));
  }
  for (const auto& k : canonical_box(xs.size(), K)) {
    // sum k_i log_i mod N in 128-bit arithmetic.
    __int128 s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<__int128>(k[i]) * logs[i];
    s %= static_cast<__int128>(N);
    if (s == 0) return k;
  }
  return std::nullopt;
}

LiftedCurve::LiftedCurve(const CurveFq& E)
    : base(E), ext(quadratic_extension(E.ctx())), lifted(E.base_change(ext)) {}

PointFq LiftedCurve::lift(Code alpha) const {
  if (auto beta = base.ctx()->sqrt(base.rhs(alpha))) return PointFq::affine(ext.embed(alpha), ext.embed(*beta));
  const Code X = ext.embed(alpha);
  return PointFq::affine(X, *ext.ext->sqrt(lifted.rhs(X)));
}

std::optional<ExponentVector> is_L_linear_dependent_points(const CurveFq& E, const std::vector<PointFq>& pts, long L) {
  for (const auto& P : pts) {
    if (!E.on_curve(P)) throw DomainError("point not on the curve");
  }
  const auto box = canonical_box(pts.size(), L);
  const auto hit = linear_relations(E, pts, box, L, true);
  if (hit.empty()) return std::nullopt;
  return box[hit[0]];
}

std::optional<ExponentVector> is_L_linear_dependent(const std::vector<FqElem>& alphas, const CurveFq& E, long L) {
  const LiftedCurve C(E);
  std::vector<PointFq> pts;
  for (const auto& a : alphas) {
    if (!a.ctx()->same_field(*E.ctx())) throw DomainError("element and curve over different fields");
    pts.push_back(C.lift(a.code()));
  }
  return is_L_linear_dependent_points(C.lifted, pts, L);
}

std::string to_string(LocusSet s) {
  switch (s) {
    case LocusSet::A: return "A";
    case LocusSet::B: return "B";
    case LocusSet::C: return "C";
    case LocusSet::D: return "D";
    case LocusSet::E: return "E";
  }
  return "?";
}

LocusSet parse_locus_set(const std::string& text) {
  if (text == "A") return LocusSet::A;
  if (text == "B") return LocusSet::B;
  if (text == "C") return LocusSet::C;
  if (text == "D") return LocusSet::D;
  if (text == "E") return LocusSet::E;
  throw DomainError("unknown set '" + text + "' (expected A, B, C, D or E)");
}

void LocusProblem::validate() const {
  const bool needs_phis = set != LocusSet::C;
  const bool needs_rhos = set != LocusSet::A;
  const bool needs_curve = set == LocusSet::B || set == LocusSet::C || set == LocusSet::E;
  if (needs_phis == phis.empty()) throw DomainError("set " + to_string(set) + (needs_phis ? " needs phis" : " takes no phis"));
  if (needs_rhos == rhos.empty()) throw DomainError("set " + to_string(set) + (needs_rhos ? " needs rhos" : " takes no rhos"));
  if (needs_curve != curve.has_value()) {
    throw DomainError("set " + to_string(set) + (needs_curve ? " needs a curve" : " takes no curve"));
  }
}

RelationSystem LocusProblem::prediction_system() const {
  validate();
  RelationSystem s;
  std::vector<RatFunc> both = phis;
  both.insert(both.end(), rhos.begin(), rhos.end());
  switch (set) {
    case LocusSet::A:
      s.phis = phis;
      break;
    case LocusSet::D:
      s.phis = both;
      break;
    case LocusSet::B:
      s.kind = RelationKind::MultLin;
      s.phis = phis;
      s.rhos = rhos;
      s.curve = curve;
      break;
    case LocusSet::C:
      s.kind = RelationKind::LinLin;
      s.rhos = rhos;
      s.curve = curve;
      break;
    case LocusSet::E:
      s.kind = RelationKind::LinLin;
      s.rhos = both;
      s.curve = curve;
      break;
  }
  return s;
}

LocusReport enumerate(const LocusProblem& problem, const FieldPtr& ctx, long K, long L, unsigned jobs) {
  problem.validate();
  if (K < 1 || L < 1) throw DomainError("K and L must be at least 1");
  const FieldCtx& F = *ctx;
  const LocusSet set = problem.set;
  const bool phi_linear = set == LocusSet::E;
  const bool rho_linear = set == LocusSet::B || set == LocusSet::C || set == LocusSet::E;
  const auto phis = reduce_all(problem.phis, F, phi_linear);
  const auto rhos = reduce_all(problem.rhos, F, rho_linear);
  std::optional<LiftedCurve> curve;
  if (problem.curve) curve.emplace(reduce_mod_p(*problem.curve, ctx));

  LocusReport report;
  report.set = set;
  report.p = F.p();
  report.d = F.d();
  report.K = K;
  report.L = L;
  // C and the first family of A use the same functions for both relations.
  const bool two_relation = set == LocusSet::A || set == LocusSet::C;
  const std::size_t m = two_relation ? (set == LocusSet::A ? phis.size() : rhos.size()) : phis.size();
  const std::size_t n = two_relation ? m : rhos.size();
  const auto kbox = canonical_box(m, K);
  const auto lbox = canonical_box(n, L);
  check_budget(kbox.size() + lbox.size(), F.q());
  if (two_relation && m < 2) return report;

  struct Chunk {
    std::vector<LocusElement> elements;
    std::vector<Code> excluded;
  };
  const std::uint64_t q = F.q();
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(q, 4ULL * std::max(1U, jobs)));
  const auto parts = parallel_map<Chunk>(chunks, jobs, [&](std::size_t c) {
    Chunk out;
    const std::uint64_t lo = q * c / chunks;
    const std::uint64_t hi = q * (c + 1) / chunks;
    for (Code alpha = lo; alpha < hi; ++alpha) {
      // Multiplicative values exclude zeros and poles, points exclude poles.
      auto values = [&](const std::vector<ReducedFunc>& fs, bool linear, std::vector<Code>& v) {
        for (const auto& f : fs) {
          auto x = value_at(f, alpha, F, !linear);
          if (!x) return false;
          v.push_back(*x);
        }
        return true;
      };
      std::vector<Code> pv, rv;
      const bool ok = (set == LocusSet::C || values(phis, phi_linear, pv)) &&
                      (set == LocusSet::A || values(rhos, rho_linear, rv));
      if (!ok) {
        out.excluded.push_back(alpha);
        continue;
      }
      auto points = [&](const std::vector<Code>& xs) {
        std::vector<PointFq> pts;
        for (Code x : xs) pts.push_back(curve->lift(x));
        return pts;
      };
      LocusElement el;
      el.alpha = alpha;
      using Kind = DependenceWitness::Kind;
      if (two_relation) {
        const bool lin = set == LocusSet::C;
        auto rel = [&](const std::vector<ExponentVector>& box, long B) {
          return lin ? linear_relations(curve->lifted, points(rv), box, B, false)
                     : mult_relations(F, pv, box, B, false);
        };
        const auto ks = rel(kbox, K);
        if (ks.empty()) continue;
        const auto ls = rel(lbox, L);
        const auto pair = independent_pair(ks, kbox, ls, lbox);
        if (!pair) continue;
        el.witnesses.push_back({lin ? Kind::Elliptic : Kind::Multiplicative, kbox[pair->first], lbox[pair->second]});
      } else {
        const auto ks = phi_linear ? linear_relations(curve->lifted, points(pv), kbox, K, true)
                                   : mult_relations(F, pv, kbox, K, true);
        if (ks.empty()) continue;
        const auto ls = rho_linear ? linear_relations(curve->lifted, points(rv), lbox, L, true)
                                   : mult_relations(F, rv, lbox, L, true);
        if (ls.empty()) continue;
        el.witnesses.push_back({phi_linear ? Kind::Elliptic : Kind::Multiplicative, kbox[ks[0]], std::nullopt});
        el.witnesses.push_back({rho_linear ? Kind::Elliptic : Kind::Multiplicative, lbox[ls[0]], std::nullopt});
      }
      out.elements.push_back(std::move(el));
    }
    return out;
  });
  for (const auto& part : parts) {
    report.elements.insert(report.elements.end(), part.elements.begin(), part.elements.end());
    report.excluded.insert(report.excluded.end(), part.excluded.begin(), part.excluded.end());
  }
  return report;
}

LocusReport enumerate_A(const std::vector<RatFunc>& phis, const FieldPtr& ctx, long K, long L, unsigned jobs) {
  return enumerate({LocusSet::A, phis, {}, std::nullopt}, ctx, K, L, jobs);
}

LocusReport enumerate_B(const std::vector<RatFunc>& phis, const std::vector<RatFunc>& rhos, const CurveQ& E,
                        const FieldPtr& ctx, long K, long L, unsigned jobs) {
  return enumerate({LocusSet::B, phis, rhos, E}, ctx, K, L, jobs);
}

LocusReport enumerate_C(const std::vector<RatFunc>& rhos, const CurveQ& E, const FieldPtr& ctx, long K, long L,
                        unsigned jobs) {
  return enumerate({LocusSet::C, {}, rhos, E}, ctx, K, L, jobs);
}

LocusReport enumerate_D(const std::vector<RatFunc>& phis, const std::vector<RatFunc>& rhos, const FieldPtr& ctx,
                        long K, long L, unsigned jobs) {
  return enumerate({LocusSet::D, phis, rhos, std::nullopt}, ctx, K, L, jobs);
}

LocusReport enumerate_E(const std::vector<RatFunc>& phis, const std::vector<RatFunc>& rhos, const CurveQ& E,
                        const FieldPtr& ctx, long K, long L, unsigned jobs) {
  return enumerate({LocusSet::E, phis, rhos, E}, ctx, K, L, jobs);
}

void attach_prediction(LocusReport& report, const ResultantTable& table) {
  if (table.K != report.K || table.L != report.L) throw DomainError("table boxes differ from the report boxes");
  const BigInt p(report.p);
  const Valuation v = vp(table.T, p);
  report.has_prediction = true;
  report.vp_T = v.value;
  report.deg_W = std::max(0, table.W.degree());
  report.predicted_bound = report.vp_T + static_cast<std::uint64_t>(report.deg_W);
  report.degenerate_prime = table.J_product() % p == 0 || table.content_product % p == 0;
  const auto F = FieldCtx::make(report.p, report.d);
  const FqPoly W = reduce_poly(table.W, *F);
  report.unexplained = 0;
  for (auto& el : report.elements) {
    el.root_of_W = evaluate(W, el.alpha, *F) == 0;
    report.unexplained += !el.root_of_W;
  }
}

std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::MultMult: return "MULT_MULT";
    case SweepMode::MultLin: return "MULT_LIN";
    case SweepMode::LinLin: return "LIN_LIN";
  }
  return "?";
}

namespace {

// Order of x if it is at most t, else 0.
std::uint64_t small_mult_order(const FieldCtx& F, Code x, long t) {
  Code y = x;
  for (long j = 1; j <= t; ++j) {
    if (y == 1) return static_cast<std::uint64_t>(j);
    y = F.mul(y, x);
  }
  return 0;
}

std::uint64_t small_point_order(const CurveFq& E, const PointFq& P, long t) {
  PointFq Q = P;
  for (long j = 1; j <= t; ++j) {
    if (Q.infinity) return static_cast<std::uint64_t>(j);
    Q = E.add(Q, P);
  }
  return 0;
}

}  // namespace

SweepReport order_sweep(const RatFunc& phi, const RatFunc& rho, const std::optional<CurveQ>& E, std::uint64_t pmax,
                        double c, double e, std::optional<long> fixed_t, bool linear_phi, bool with_prediction,
                        std::uint64_t pmin, unsigned jobs) {
  if (pmax > 10000) throw BudgetExceeded("order_sweep is limited to pmax <= 10^4");
  if (linear_phi && !E) throw DomainError("a linear phi needs a curve");
  SweepReport report;
  report.mode = !E ? SweepMode::MultMult : linear_phi ? SweepMode::LinLin : SweepMode::MultLin;
  report.c = c;
  report.e = e;
  const bool rho_linear = E.has_value();

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : primes_up_to(pmax)) {
    if (p >= pmin) primes.push_back(p);
  }
  auto threshold = [&](std::uint64_t p) -> long {
    if (fixed_t) return *fixed_t;
    return static_cast<long>(std::floor(c * std::pow(std::log(static_cast<double>(p)), e)));
  };

  LocusProblem problem;
  problem.set = report.mode == SweepMode::MultMult ? LocusSet::D
                : report.mode == SweepMode::MultLin ? LocusSet::B
                                                    : LocusSet::E;
  problem.phis = {phi};
  problem.rhos = {rho};
  problem.curve = E;
  std::map<long, std::optional<ResultantTable>> tables;
  if (with_prediction) {
    for (std::uint64_t p : primes) {
      const long t = threshold(p);
      if (t < 1 || tables.count(t)) continue;
      try {
        tables[t] = resultant_table(problem.prediction_system(), t, t, jobs);
      } catch (const BudgetExceeded&) {
        tables[t] = std::nullopt;
      }
    }
  }

  struct Result {
    bool skipped = false;
    SweepRow row;
  };
  const auto results = parallel_map<Result>(primes.size(), jobs, [&](std::size_t idx) {
    Result r;
    const std::uint64_t p = primes[idx];
    r.row.p = p;
    r.row.t = threshold(p);
    const auto F = FieldCtx::make(p);
    std::optional<ReducedFunc> fp, fr;
    std::optional<LiftedCurve> curve;
    try {
      fp = reduce_func(phi, *F, linear_phi);
      fr = reduce_func(rho, *F, rho_linear);
      if (E) {
        if (p <= 3) throw BadReduction("characteristic 2 or 3");
        curve.emplace(reduce_mod_p(*E, F));
      }
    } catch (const DomainError&) {
      r.skipped = true;
      return r;
    }
    const long t = r.row.t;
    if (t >= 1) {
      for (Code alpha = 0; alpha < p; ++alpha) {
        const auto x = value_at(*fp, alpha, *F, !linear_phi);
        const auto y = value_at(*fr, alpha, *F, !rho_linear);
        if (!x || !y) continue;
        const std::uint64_t o1 = linear_phi ? small_point_order(curve->lifted, curve->lift(*x), t)
                                            : small_mult_order(*F, *x, t);
        if (o1 == 0) continue;
        const std::uint64_t o2 = rho_linear ? small_point_order(curve->lifted, curve->lift(*y), t)
                                            : small_mult_order(*F, *y, t);
        if (o2 == 0) continue;
        r.row.exceptional.push_back(alpha);
        r.row.orders.emplace_back(o1, o2);
      }
      auto it = tables.find(t);
      if (it != tables.end() && it->second) {
        const auto& tab = *it->second;
        r.row.predicted_bound = vp(tab.T, BigInt(p)).value + static_cast<std::uint64_t>(std::max(0, tab.W.degree()));
      }
    }
    return r;
  });
  for (const auto& r : results) {
    if (r.skipped) {
      report.skipped.push_back(r.row.p);
    } else {
      report.rows.push_back(r.row);
    }
  }
  return report;
}

}  // namespace ffdep
