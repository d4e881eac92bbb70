#include "ffdep/semaev.hpp"

#include "ffdep/parallel.hpp"
#include "ffdep/modres.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace ffdep {

namespace {

using Mono = MultiPoly::Mono;

MultiPoly var(int nvars, int i) { return MultiPoly::variable(nvars, i); }

MultiPoly sigma3(const BigInt& a, const BigInt& b) {
  const MultiPoly X1 = var(3, 0), X2 = var(3, 1), X3 = var(3, 2);
  const MultiPoly A = MultiPoly::constant(3, a), B = MultiPoly::constant(3, b);
  const MultiPoly two = MultiPoly::constant(3, 2), four = MultiPoly::constant(3, 4);
  const MultiPoly d = X1 - X2;
  const MultiPoly s = X1 + X2;
  const MultiPoly m = X1 * X2;
  return d * d * X3 * X3 - two * (s * (m + A) + two * B) * X3 + (m - A) * (m - A) - four * B * s;
}

// Memoized construction for one integral (a, b).
class Builder {
 public:
  Builder(BigInt a, BigInt b, std::size_t grid_budget) : a_(std::move(a)), b_(std::move(b)), grid_budget_(grid_budget) {}

  const MultiPoly& get(int n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    MultiPoly out = build(n, (n - 1) / 2);
    return cache_.emplace(n, std::move(out)).first->second;
  }

  MultiPoly take(int n) {
    get(n);
    auto node = cache_.extract(n);
    return std::move(node.mapped());
  }

  void evict(int n) { cache_.erase(n); }

  MultiPoly build(int n, int k) {
    if (n == 2) return var(2, 0) - var(2, 1);
    if (n == 3) return normalize_summation(sigma3(a_, b_));
    if (k < 1 || k > n - 3) throw DomainError("summation split k must satisfy 1 <= k <= n-3");
    // sigma_{n-k}(X_1..X_{n-k-1}, X) and sigma_{k+2}(X_{n-k}..X_n, X), X in slot n.
    const int left_n = n - k;
    const int right_n = k + 2;
    std::vector<int> lmap(static_cast<std::size_t>(left_n));
    for (int i = 0; i + 1 < left_n; ++i) lmap[static_cast<std::size_t>(i)] = i;
    lmap.back() = n;
    std::vector<int> rmap(static_cast<std::size_t>(right_n));
    for (int i = 0; i + 1 < right_n; ++i) rmap[static_cast<std::size_t>(i)] = n - k - 1 + i;
    rmap.back() = n;
    const MultiPoly left = get(left_n).rename(lmap, n + 1);
    const MultiPoly right = get(right_n).rename(rmap, n + 1);
    MultiPoly r = resultant_modular(left, right, n, grid_budget_);
    if (r.is_zero()) throw DomainError("summation resultant vanished; singular curve?");
    r.truncate_vars(n);
    return normalize_summation(std::move(r));
  }

 private:
  BigInt a_;
  BigInt b_;
  std::size_t grid_budget_;
  std::map<int, MultiPoly> cache_;
};

struct Model {
  BigInt u;
  BigInt a;
  BigInt b;
};

Model integral_model(const CurveQ& E) {
  if (E.discriminant_part() == 0) throw DomainError("singular curve");
  Model m;
  m.u = E.a.get_den() * E.b.get_den();
  const BigInt u2 = m.u * m.u;
  const BigRat a = E.a * BigRat(u2 * u2);
  const BigRat b = E.b * BigRat(u2 * u2 * u2);
  m.a = a.get_num();
  m.b = b.get_num();
  return m;
}

// sigma^E(X) is proportional to sigma^{E'}(u^2 X).
MultiPoly undo_model(MultiPoly f, const BigInt& u) {
  if (u == 1) return f;
  const BigInt u2 = u * u;
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) terms.emplace_back(m, c * pow(u2, MultiPoly::total_degree(m)));
  return normalize_summation(MultiPoly(f.nvars(), std::move(terms)));
}

}  // namespace

MultiPoly normalize_summation(MultiPoly f) {
  if (f.is_zero()) return f;
  f.divexact_inplace(f.content());
  const auto lead = std::max_element(f.terms().begin(), f.terms().end(),
                                     [](const auto& x, const auto& y) { return x.first < y.first; });
  if (lead->second < 0) f.negate_inplace();
  return f;
}

bool invariant_under_permutation(const MultiPoly& f, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != f.nvars()) throw DomainError("permutation size mismatch");
  for (const auto& [m, c] : f.terms()) {
    std::vector<unsigned> e(perm.size(), 0);
    for (int i = 0; i < f.nvars(); ++i) e[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = MultiPoly::exponent(m, i);
    const auto other = f.coefficient(MultiPoly::pack(e));
    if (!other || *other != c) return false;
  }
  return true;
}

MultiPoly swap_variables(const MultiPoly& f, int i, int j) {
  std::vector<int> map(static_cast<std::size_t>(f.nvars()));
  for (int t = 0; t < f.nvars(); ++t) map[static_cast<std::size_t>(t)] = t;
  std::swap(map.at(static_cast<std::size_t>(i)), map.at(static_cast<std::size_t>(j)));
  return f.rename(map, f.nvars());
}

MultiPoly summation_poly(const CurveQ& E, int n, std::optional<int> split, std::size_t budget) {
  if (n < 2) throw DomainError("summation polynomial needs n >= 2");
  if (n > MultiPoly::kMaxVars - 1) throw BudgetExceeded("summation polynomial beyond n = 7");
  const Model m = integral_model(E);
  Builder builder(m.a, m.b, budget);
  if (split && n > 3) return undo_model(builder.build(n, *split), m.u);
  return undo_model(builder.take(n), m.u);
}

bool sums_to_zero_for_some_signs(const CurveFq& E, const std::vector<Code>& xs) {
  const QuadraticExtension ext = quadratic_extension(E.ctx());
  const CurveFq E2 = E.base_change(ext);
  std::vector<PointFq> pts;
  for (Code x : xs) {
    const Code xe = ext.embed(x);
    pts.push_back(PointFq::affine(xe, *E2.ctx()->sqrt(E2.rhs(xe))));
  }
  // Fixing the first sign loses nothing: negating every point preserves O.
  std::function<bool(std::size_t, const PointFq&)> go = [&](std::size_t i, const PointFq& acc) {
    if (i == pts.size()) return acc.infinity;
    return go(i + 1, E2.add(acc, pts[i])) || go(i + 1, E2.add(acc, E2.neg(pts[i])));
  };
  return pts.empty() || go(1, pts[0]);
}

ZeroSetReport verify_zero_set(const CurveFq& E, int n, unsigned jobs) {
  const FieldPtr& F = E.ctx();
  if (F->d() != 1) throw DomainError("verify_zero_set builds sigma_n over Z and needs a prime field");
  const CurveQ lift(BigRat(BigInt(static_cast<unsigned long>(E.a()))), BigRat(BigInt(static_cast<unsigned long>(E.b()))));
  return verify_zero_set(E, n, summation_poly(lift, n), jobs);
}

ZeroSetReport verify_zero_set(const CurveFq& E, int n, const MultiPoly& sigma, unsigned jobs) {
  const FieldPtr& F = E.ctx();
  if (n < 2) throw DomainError("verify_zero_set needs n >= 2");
  if (sigma.nvars() != n) throw DomainError("sigma has the wrong number of variables");
  if (F->d() != 1) throw DomainError("sigma is reduced coefficientwise, so the field must be prime");
  const std::uint64_t q = F->q();
  double tuples = std::pow(static_cast<double>(q), n);
  if (tuples > 1e7) throw BudgetExceeded("q^n exceeds the exhaustive budget of 10^7");

  // Dense tensor of coefficients mod p, variable 0 most significant.
  std::size_t dim = 0;
  for (int i = 0; i < n; ++i) dim = std::max<std::size_t>(dim, sigma.degree_in(i) + 1);
  std::vector<std::size_t> stride(static_cast<std::size_t>(n) + 1, 1);
  for (int i = n - 1; i >= 0; --i) stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i) + 1] * dim;
  std::vector<Code> tensor(stride[0], 0);
  const auto coeffs = sigma.coefficients_mod(F->p());
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    const Mono m = sigma.terms()[t].first;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx += MultiPoly::exponent(m, i) * stride[static_cast<std::size_t>(i) + 1];
    tensor[idx] = F->add(tensor[idx], coeffs[t]);
  }

  const QuadraticExtension ext = quadratic_extension(F);
  const CurveFq E2 = E.base_change(ext);
  std::vector<PointFq> lifts(q);
  for (Code x = 0; x < q; ++x) {
    const Code xe = ext.embed(x);
    lifts[x] = PointFq::affine(xe, *E2.ctx()->sqrt(E2.rhs(xe)));
  }

  // Substitutes x for the leading variable of a tensor with `vars` variables.
  auto partial = [&](const std::vector<Code>& T, std::size_t inner, Code x) {
    std::vector<Code> out(inner, 0);
    Code xp = 1;
    for (std::size_t e = 0; e < dim; ++e) {
      for (std::size_t j = 0; j < inner; ++j) out[j] = F->add(out[j], F->mul(T[e * inner + j], xp));
      xp = F->mul(xp, x);
    }
    return out;
  };

  auto task = [&](std::size_t first) {
    ZeroSetReport rep;
    std::vector<Code> xs(static_cast<std::size_t>(n));
    std::vector<PointFq> acc(static_cast<std::size_t>(n));
    std::function<bool(int, const PointFq&)> signs = [&](int i, const PointFq& s) {
      if (i == n) return s.infinity;
      const PointFq& P = lifts[xs[static_cast<std::size_t>(i)]];
      return signs(i + 1, E2.add(s, P)) || signs(i + 1, E2.add(s, E2.neg(P)));
    };
    std::function<void(int, const std::vector<Code>&)> walk = [&](int level, const std::vector<Code>& T) {
      const std::size_t inner = stride[static_cast<std::size_t>(level) + 1];
      for (Code x = 0; x < q; ++x) {
        xs[static_cast<std::size_t>(level)] = x;
        std::vector<Code> sub = partial(T, inner, x);
        if (level + 1 < n) {
          walk(level + 1, sub);
          continue;
        }
        const bool vanishes = sub[0] == 0;
        const bool sums = signs(1, lifts[xs[0]]);
        ++rep.tuples;
        rep.zeros += vanishes;
        rep.point_sums += sums;
        if (vanishes != sums) {
          ++rep.mismatches;
          if (rep.counterexamples.size() < 10) rep.counterexamples.push_back(xs);
        }
      }
    };
    xs[0] = static_cast<Code>(first);
    std::vector<Code> T1 = partial(tensor, stride[1], static_cast<Code>(first));
    walk(1, T1);
    return rep;
  };

  const auto parts = parallel_map<ZeroSetReport>(q, jobs, task);
  ZeroSetReport out;
  out.q = q;
  out.n = n;
  for (const auto& r : parts) {
    out.tuples += r.tuples;
    out.zeros += r.zeros;
    out.point_sums += r.point_sums;
    out.mismatches += r.mismatches;
    for (const auto& c : r.counterexamples) {
      if (out.counterexamples.size() < 10) out.counterexamples.push_back(c);
    }
  }
  return out;
}

std::vector<SummationHeightRow> summation_height_profile(const CurveQ& E, int nmax, std::size_t budget) {
  if (nmax < 2 || nmax > 7) throw DomainError("summation height profile needs 2 <= nmax <= 7");
  const Model m = integral_model(E);
  Builder builder(m.a, m.b, budget);
  std::vector<SummationHeightRow> rows;
  for (int n = 2; n <= nmax; ++n) {
    const MultiPoly& base = builder.get(n);
    MultiPoly scaled;
    const MultiPoly& s = m.u == 1 ? base : (scaled = undo_model(base, m.u));
    SummationHeightRow row;
    row.n = n;
    row.terms = s.size();
    row.H = s.max_abs_coefficient();
    row.h = log_abs(row.H);
    row.log_h_over_n = n >= 3 ? std::log(row.h) / n : 0.0;
    rows.push_back(row);
    // Later steps only reuse sigma_{<= 5}.
    if (n >= 6) builder.evict(n);
  }
  return rows;
}

}  // namespace ffdep
