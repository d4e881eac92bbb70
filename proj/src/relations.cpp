#include "ffdep/relations.hpp"

#include "ffdep/parallel.hpp"
#include "ffdep/semaev.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace ffdep {

namespace {

// Pair counts above this are refused.
constexpr std::size_t kMaxPairs = 2'000'000;

IntPoly positive_primitive(const IntPoly& f) {
  IntPoly g = f.primitive();
  if (!g.is_zero() && g.leading() < 0) g = -g;
  return g;
}

// Torsion polynomial: roots are the x with m (x, y) = O, m >= 1.
IntPoly torsion_poly(const DivPolyTable& table, long m) {
  const RatPoly& psi = table.psi(static_cast<int>(m));
  if (m % 2) return psi.to_primitive();
  const auto& c = table.cubic().coeffs();
  const auto& s = psi.coeffs();
  std::vector<BigRat> out(c.size() + s.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) out[i + j] += c[i] * s[j];
  }
  return RatPoly(std::move(out)).to_primitive();
}

// x(mP) as a function of x(P).
RatFunc multiplication_map(const DivPolyTable& table, long m) {
  const DivPoly d = table.get(static_cast<int>(m));
  return RatFunc(d.phi * d.psi_sq_factor, d.psi_sq * d.phi_factor);
}

using SigmaKey = std::tuple<std::string, std::string, int>;

const MultiPoly& cached_sigma(const CurveQ& E, int r) {
  static std::mutex mu;
  static std::map<SigmaKey, MultiPoly> cache;
  const SigmaKey key{E.a.get_str(), E.b.get_str(), r};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, summation_poly(E, r)).first;
  return it->second;
}

// Numerator of sigma(N_0/D_0, ..., N_{r-1}/D_{r-1}) over the common
// denominator prod D_i^{deg_i sigma}; returns (numerator, denominator).
std::pair<IntPoly, IntPoly> evaluate_at_fractions(const MultiPoly& sigma, const std::vector<RatFunc>& r) {
  const int n = sigma.nvars();
  std::vector<std::vector<IntPoly>> npow(static_cast<std::size_t>(n));
  std::vector<std::vector<IntPoly>> dpow(static_cast<std::size_t>(n));
  std::vector<unsigned> deg(static_cast<std::size_t>(n));
  IntPoly den = IntPoly::constant(1);
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    deg[ui] = sigma.degree_in(i);
    npow[ui].push_back(IntPoly::constant(1));
    dpow[ui].push_back(IntPoly::constant(1));
    for (unsigned e = 1; e <= deg[ui]; ++e) {
      npow[ui].push_back(npow[ui].back() * r[ui].num());
      dpow[ui].push_back(dpow[ui].back() * r[ui].den());
    }
    den = den * dpow[ui].back();
  }
  IntPoly num;
  for (const auto& [mono, c] : sigma.terms()) {
    IntPoly t = IntPoly::constant(c);
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const unsigned e = MultiPoly::exponent(mono, i);
      t = t * npow[ui][e] * dpow[ui][deg[ui] - e];
    }
    num += t;
  }
  return {num, den};
}

}  // namespace

long ExponentVector::box() const {
  long b = 0;
  for (long e : entries) b = std::max(b, std::labs(e));
  return b;
}

bool ExponentVector::is_zero() const {
  for (long e : entries) {
    if (e != 0) return false;
  }
  return true;
}

bool ExponentVector::is_canonical() const {
  for (long e : entries) {
    if (e != 0) return e > 0;
  }
  return false;
}

ExponentVector ExponentVector::negated() const {
  ExponentVector out(entries);
  for (long& e : out.entries) e = -e;
  return out;
}

std::string ExponentVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries[i]);
  }
  return s + ")";
}

std::vector<ExponentVector> canonical_box(std::size_t dim, long B) {
  if (B < 0) throw DomainError("box size must be non-negative");
  std::vector<ExponentVector> out;
  if (dim == 0 || B == 0) return out;
  const double count = std::pow(2.0 * static_cast<double>(B) + 1.0, static_cast<double>(dim));
  if (count > 1e7) throw BudgetExceeded("exponent box too large");
  std::vector<long> cur(dim, -B);
  while (true) {
    ExponentVector v(cur);
    if (v.is_canonical()) out.push_back(std::move(v));
    std::size_t i = dim;
    while (i > 0 && cur[i - 1] == B) {
      cur[i - 1] = -B;
      --i;
    }
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

bool linearly_independent(const ExponentVector& k, const ExponentVector& l) {
  if (k.size() != l.size()) throw DomainError("exponent vectors of different lengths");
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      if (k[i] * l[j] != k[j] * l[i]) return true;
    }
  }
  return false;
}

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::MultMult: return "MULT_MULT";
    case RelationKind::MultLin: return "MULT_LIN";
    case RelationKind::LinLin: return "LIN_LIN";
  }
  return "?";
}

RelationKind parse_relation_kind(const std::string& text) {
  if (text == "MULT_MULT") return RelationKind::MultMult;
  if (text == "MULT_LIN") return RelationKind::MultLin;
  if (text == "LIN_LIN") return RelationKind::LinLin;
  throw DomainError("unknown relation kind '" + text + "'");
}

void RelationSystem::validate() const {
  const bool lin = kind != RelationKind::MultMult;
  if (lin != curve.has_value()) throw DomainError("a curve is required exactly for kinds with a linear side");
  if (lin != !rhos.empty()) throw DomainError("rhos are required exactly for kinds with a linear side");
  if (kind != RelationKind::LinLin && phis.empty()) throw DomainError("phis must not be empty");
  for (const auto& f : phis) {
    if (f.is_zero()) throw DomainError("phi_i must be nonzero");
  }
}

std::pair<IntPoly, IntPoly> omega_parts(const std::vector<RatFunc>& phis, const ExponentVector& k) {
  if (k.size() != phis.size()) throw DomainError("exponent vector length differs from the number of functions");
  if (k.is_zero()) throw DomainError("exponent vector must be nonzero");
  IntPoly F = IntPoly::constant(1);
  IntPoly G = IntPoly::constant(1);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    if (phis[i].is_zero()) throw DomainError("phi_" + std::to_string(i + 1) + " is zero");
    const long e = k[i];
    if (e > 0) {
      F = F * phis[i].num().pow(static_cast<unsigned>(e));
      G = G * phis[i].den().pow(static_cast<unsigned>(e));
    } else if (e < 0) {
      F = F * phis[i].den().pow(static_cast<unsigned>(-e));
      G = G * phis[i].num().pow(static_cast<unsigned>(-e));
    }
  }
  return {F, G};
}

IntPoly relation_poly(const std::vector<RatFunc>& phis, const ExponentVector& k) {
  auto [F, G] = omega_parts(phis, k);
  IntPoly r = F - G;
  if (r.is_zero()) throw DomainError("F_k = G_k for k = " + k.to_string() + ": the functions are multiplicatively dependent");
  return r;
}

IntPoly theta_numerator(const CurveQ& E, const std::vector<RatFunc>& rhos, const ExponentVector& l) {
  if (l.size() != rhos.size()) throw DomainError("coefficient vector length differs from the number of rhos");
  if (l.is_zero()) throw DomainError("coefficient vector must be nonzero");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] != 0) support.push_back(i);
  }
  if (support.size() > 7) throw BudgetExceeded("more than 7 nonzero coefficients");
  const DivPolyTable table(E, static_cast<int>(l.box()));
  IntPoly num;
  if (support.size() == 1) {
    const std::size_t i = support[0];
    const IntPoly T = torsion_poly(table, std::labs(l[i]));
    num = homogeneous_compose(T, rhos[i].num(), rhos[i].den(), T.degree());
  } else {
    std::vector<RatFunc> xs;
    for (std::size_t i : support) xs.push_back(multiplication_map(table, std::labs(l[i])).compose(rhos[i]));
    const MultiPoly& sigma = cached_sigma(E, static_cast<int>(support.size()));
    auto [n, d] = evaluate_at_fractions(sigma, xs);
    if (!n.is_zero() && n.degree() > 0 && d.degree() > 0) {
      const IntPoly g = gcd(n, d);
      if (g.degree() > 0) n = divide_exact(n, g);
    }
    num = std::move(n);
  }
  if (num.is_zero()) {
    throw DomainError("Theta vanishes identically for l = " + l.to_string() +
                      ": the points are generically linearly dependent");
  }
  return positive_primitive(num);
}

IntPoly squarefree_reduced(const IntPoly& f, const IntPoly& W) {
  if (f.is_zero() || W.is_zero()) throw DomainError("squarefree_reduced needs nonzero inputs");
  IntPoly P = squarefree_part(f);
  if (P.degree() <= 0) return IntPoly::constant(1);
  if (W.degree() <= 0) return P;
  const IntPoly g = gcd(P, W);
  if (g.degree() > 0) P = divide_exact(P, g);
  return positive_primitive(P);
}

std::pair<RelationSide, RelationSide> relation_sides(const RelationSystem& system, long K, long L) {
  system.validate();
  if (K < 1 || L < 1) throw DomainError("K and L must be at least 1");
  auto mult_side = [&](long B) {
    RelationSide s;
    s.vectors = canonical_box(system.phis.size(), B);
    for (const auto& k : s.vectors) s.polys.push_back(relation_poly(system.phis, k));
    return s;
  };
  auto lin_side = [&](long B) {
    RelationSide s;
    s.vectors = canonical_box(system.rhos.size(), B);
    for (const auto& l : s.vectors) s.polys.push_back(theta_numerator(*system.curve, system.rhos, l));
    return s;
  };
  switch (system.kind) {
    case RelationKind::MultMult: return {mult_side(K), mult_side(L)};
    case RelationKind::MultLin: return {mult_side(K), lin_side(L)};
    case RelationKind::LinLin: return {lin_side(K), lin_side(L)};
  }
  throw std::logic_error("unreachable");
}

namespace {

bool pair_counts(const RelationSystem& system, const ExponentVector& k, const ExponentVector& l) {
  return system.kind == RelationKind::MultLin || linearly_independent(k, l);
}

IntPoly build_W(const RelationSystem& system, const RelationSide& left, const RelationSide& right) {
  if (left.vectors.size() * right.vectors.size() > kMaxPairs) throw BudgetExceeded("too many (k, l) pairs");
  IntPoly W = IntPoly::constant(1);
  for (std::size_t i = 0; i < left.vectors.size(); ++i) {
    if (left.polys[i].degree() <= 0) continue;
    for (std::size_t j = 0; j < right.vectors.size(); ++j) {
      if (right.polys[j].degree() <= 0) continue;
      if (!pair_counts(system, left.vectors[i], right.vectors[j])) continue;
      const IntPoly g = gcd(left.polys[i], right.polys[j]);
      if (g.degree() <= 0) continue;
      IntPoly s = squarefree_part(g);
      const IntPoly common = gcd(s, W);
      if (common.degree() > 0) s = divide_exact(s, common);
      if (s.degree() > 0) W = positive_primitive(W * s);
    }
  }
  return W;
}

}  // namespace

IntPoly candidate_W(const RelationSystem& system, long K, long L) {
  const auto [left, right] = relation_sides(system, K, L);
  return build_W(system, left, right);
}

BigInt ResultantTable::J_product() const {
  BigInt p = 1;
  for (const auto& c : J) p *= c.value;
  return p;
}

ResultantTable resultant_table(const RelationSystem& system, long K, long L, unsigned jobs) {
  const auto [left, right] = relation_sides(system, K, L);
  ResultantTable out;
  out.kind = system.kind;
  out.K = K;
  out.L = L;
  out.W = build_W(system, left, right);

  auto note_constant = [&](const RelationSide& side) {
    for (std::size_t i = 0; i < side.vectors.size(); ++i) {
      if (side.polys[i].degree() <= 0) out.J.push_back({side.vectors[i], abs(side.polys[i].leading())});
    }
  };
  note_constant(left);
  note_constant(right);
  for (const RelationSide* side : {&left, &right}) {
    for (const auto& f : side->polys) {
      if (f.degree() > 0 && f.content() != 1) out.content_product *= f.content();
    }
  }

  std::vector<IntPoly> reduced(right.polys.size());
  for (std::size_t j = 0; j < right.polys.size(); ++j) reduced[j] = squarefree_reduced(right.polys[j], out.W);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < left.vectors.size(); ++i) {
    if (left.polys[i].degree() <= 0) continue;
    for (std::size_t j = 0; j < right.vectors.size(); ++j) {
      if (!pair_counts(system, left.vectors[i], right.vectors[j])) {
        ++out.dependent_pairs;
        continue;
      }
      pairs.emplace_back(i, j);
    }
  }

  out.records = parallel_map<ResultantRecord>(pairs.size(), jobs, [&](std::size_t idx) {
    const auto [i, j] = pairs[idx];
    ResultantRecord rec;
    rec.k = left.vectors[i];
    rec.l = right.vectors[j];
    const IntPoly& f = left.polys[i];
    const IntPoly& g = reduced[j];
    rec.R = resultant(f, g);
    if (rec.R == 0) {
      throw std::logic_error("R = 0 for k = " + rec.k.to_string() + ", l = " + rec.l.to_string() +
                             ": candidate_W misses a common factor");
    }
    rec.logR = log_abs(rec.R);
    rec.log_hadamard = log_hadamard_bound(f, g);
    rec.within_hadamard = within_hadamard_bound(rec.R, f, g);
    return rec;
  });

  for (const auto& rec : out.records) {
    out.T *= abs(rec.R);
    out.max_logR = std::max(out.max_logR, rec.logR);
    out.hadamard_ok = out.hadamard_ok && rec.within_hadamard;
  }
  out.logT = log_abs(out.T);
  const double k = static_cast<double>(K);
  const double l = static_cast<double>(L);
  out.ratio_KL = out.max_logR / (k * l);
  out.ratio_KL2 = out.max_logR / (k * l * l);
  out.ratio_K2L2 = out.max_logR / (k * k * l * l);
  return out;
}

}  // namespace ffdep
