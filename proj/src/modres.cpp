#include "ffdep/modres.hpp"

#include <algorithm>
#include <numeric>

namespace ffdep {

namespace {

using u64 = std::uint64_t;

// Primes below 2^29 keep sums of up to 32 products below 2^63.
constexpr u64 kPrimeCeiling = u64{1} << 29;
constexpr u64 kReduceAt = u64{1} << 63;

struct Mod {
  u64 p;
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a)) {
      if (e & 1) r = mul(r, a);
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

// Determinant of an n x n row-major matrix, destroyed in place. Rows are
// combined without division and the accumulated scale removed at the end.
u64 det_mod(std::vector<u64>& m, int n, const Mod& F) {
  if (n == 1) return m[0];
  if (n == 2) return F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2]));
  if (n == 4) {
    // Laplace expansion along the first two rows.
    const u64 p = F.p;
    auto minor = [&](int r, int a, int b) { return F.sub(F.mul(m[r * 4 + a], m[(r + 1) * 4 + b]), F.mul(m[r * 4 + b], m[(r + 1) * 4 + a])); };
    const u64 s01 = minor(0, 0, 1), s02 = minor(0, 0, 2), s03 = minor(0, 0, 3);
    const u64 s12 = minor(0, 1, 2), s13 = minor(0, 1, 3), s23 = minor(0, 2, 3);
    const u64 c01 = minor(2, 0, 1), c02 = minor(2, 0, 2), c03 = minor(2, 0, 3);
    const u64 c12 = minor(2, 1, 2), c13 = minor(2, 1, 3), c23 = minor(2, 2, 3);
    const u64 plus = (s01 * c23 % p + s03 * c12 % p + s12 * c03 % p + s23 * c01 % p) % p;
    const u64 minus = (s02 * c13 % p + s13 * c02 % p) % p;
    return F.sub(plus, minus);
  }
  u64 det = 1;
  u64 scale = 1;
  for (int i = 0; i < n; ++i) {
    int piv = i;
    while (piv < n && m[static_cast<std::size_t>(piv * n + i)] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != i) {
      for (int c = 0; c < n; ++c) std::swap(m[static_cast<std::size_t>(i * n + c)], m[static_cast<std::size_t>(piv * n + c)]);
      det = F.p - det;
    }
    const u64 pv = m[static_cast<std::size_t>(i * n + i)];
    det = F.mul(det, pv);
    for (int r = i + 1; r < n; ++r) {
      const u64 f = m[static_cast<std::size_t>(r * n + i)];
      if (f == 0) continue;
      scale = F.mul(scale, pv);
      for (int c = i; c < n; ++c) {
        const auto rc = static_cast<std::size_t>(r * n + c);
        m[rc] = F.sub(F.mul(m[rc], pv), F.mul(f, m[static_cast<std::size_t>(i * n + c)]));
      }
    }
  }
  return scale == 1 ? det : F.mul(det, F.inv(scale));
}

// Formal Sylvester determinant of a (degree da) and b (degree db).
u64 sylvester_mod(const u64* a, int da, const u64* b, int db, const Mod& F) {
  const int n = da + db;
  if (n == 0) return 1;
  std::vector<u64> m(static_cast<std::size_t>(n * n), 0);
  for (int r = 0; r < db; ++r) {
    for (int j = 0; j <= da; ++j) m[static_cast<std::size_t>(r * n + r + j)] = a[da - j];
  }
  for (int r = 0; r < da; ++r) {
    for (int j = 0; j <= db; ++j) m[static_cast<std::size_t>((db + r) * n + r + j)] = b[db - j];
  }
  return det_mod(m, n, F);
}

// Coefficients (in var) of f evaluated at every point of a sub-grid. Axes of
// extent 1 sit at 0.
struct Table {
  std::vector<int> vars;
  std::vector<std::size_t> extent;
  int deg = 0;
  std::vector<u64> vals;  // point-major, deg + 1 entries per point
};

Table tabulate(const MultiPoly& f, int var, const std::vector<std::size_t>& grid_extent, const Mod& F) {
  Table t;
  t.deg = static_cast<int>(f.degree_in(var));
  std::vector<bool> at_zero(static_cast<std::size_t>(f.nvars()), false);
  for (int i = 0; i < f.nvars(); ++i) {
    if (i == var || f.degree_in(i) == 0) continue;
    if (grid_extent[static_cast<std::size_t>(i)] > 1) {
      t.vars.push_back(i);
      t.extent.push_back(grid_extent[static_cast<std::size_t>(i)]);
    } else {
      at_zero[static_cast<std::size_t>(i)] = true;
    }
  }
  auto vanishes_at_zero = [&](MultiPoly::Mono m) {
    for (int i = 0; i < f.nvars(); ++i) {
      if (at_zero[static_cast<std::size_t>(i)] && MultiPoly::exponent(m, i) > 0) return true;
    }
    return false;
  };
  std::size_t points = 1;
  for (auto e : t.extent) points *= e;
  const auto width = static_cast<std::size_t>(t.deg + 1);
  t.vals.assign(points * width, 0);
  auto coeffs = f.coefficients_mod(F.p);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (vanishes_at_zero(f.terms()[k].first)) coeffs[k] = 0;
  }
  // Powers x^e for x on the grid.
  std::size_t maxext = 1;
  for (auto e : t.extent) maxext = std::max(maxext, e);
  const unsigned maxdeg = 256;
  std::vector<u64> pw(maxext * maxdeg);
  for (std::size_t x = 0; x < maxext; ++x) {
    u64 v = 1;
    for (unsigned e = 0; e < maxdeg; ++e) {
      pw[x * maxdeg + e] = v;
      v = F.mul(v, x % F.p);
    }
  }
  std::vector<std::size_t> pt(t.vars.size(), 0);
  for (std::size_t idx = 0; idx < points; ++idx) {
    u64* row = &t.vals[idx * width];
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      const auto m = f.terms()[k].first;
      u64 v = coeffs[k];
      for (std::size_t j = 0; j < t.vars.size(); ++j) v = F.mul(v, pw[pt[j] * maxdeg + MultiPoly::exponent(m, t.vars[j])]);
      const unsigned e = MultiPoly::exponent(m, var);
      row[e] = F.add(row[e], v);
    }
    for (std::size_t j = t.vars.size(); j-- > 0;) {
      if (++pt[j] < t.extent[j]) break;
      pt[j] = 0;
    }
  }
  return t;
}

// Inverse of the Vandermonde matrix on nodes 0..n-1, row-major.
std::vector<u64> inverse_vandermonde(std::size_t n, const Mod& F) {
  std::vector<u64> a(n * 2 * n, 0);
  const std::size_t w = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    u64 v = 1;
    for (std::size_t j = 0; j < n; ++j) {
      a[i * w + j] = v;
      v = F.mul(v, i);
    }
    a[i * w + n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv * w + c] == 0) ++piv;
    for (std::size_t k = 0; k < w; ++k) std::swap(a[c * w + k], a[piv * w + k]);
    const u64 iv = F.inv(a[c * w + c]);
    for (std::size_t k = 0; k < w; ++k) a[c * w + k] = F.mul(a[c * w + k], iv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r * w + c] == 0) continue;
      const u64 f = a[r * w + c];
      for (std::size_t k = 0; k < w; ++k) a[r * w + k] = F.sub(a[r * w + k], F.mul(f, a[c * w + k]));
    }
  }
  std::vector<u64> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = a[i * w + n + j];
  }
  return out;
}

// Values on the grid -> coefficients, one axis at a time.
void interpolate(std::vector<u64>& g, const std::vector<std::size_t>& extent, const Mod& F) {
  std::size_t inner = 1;
  for (std::size_t ax = extent.size(); ax-- > 0;) {
    const std::size_t n = extent[ax];
    const std::size_t outer = g.size() / (n * inner);
    if (n > 1) {
      const auto V = inverse_vandermonde(n, F);
      std::vector<u64> fiber(n);
      for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < inner; ++in) {
          const std::size_t base = o * n * inner + in;
          for (std::size_t k = 0; k < n; ++k) fiber[k] = g[base + k * inner];
          for (std::size_t i = 0; i < n; ++i) {
            u64 acc = 0;
            for (std::size_t k = 0; k < n; ++k) {
              acc += V[i * n + k] * fiber[k];
              if (acc >= kReduceAt) acc %= F.p;
            }
            g[base + i * inner] = acc % F.p;
          }
        }
      }
    }
    inner *= n;
  }
}

BigInt one_norm(const MultiPoly& f) {
  BigInt s = 0;
  for (const auto& t : f.terms()) s += abs(t.second);
  return s;
}

}  // namespace

MultiPoly resultant_modular(const MultiPoly& A0, const MultiPoly& B0, int var, std::size_t max_points) {
  if (A0.nvars() != B0.nvars()) throw DomainError("resultant_modular: variable count mismatch");
  const int nv = A0.nvars();
  if (var < 0 || var >= nv) throw DomainError("resultant_modular: variable out of range");
  if (A0.is_zero() || B0.is_zero()) return MultiPoly(nv);

  // Put the factor of smaller degree first; it supplies the companion matrix.
  const bool swapped = A0.degree_in(var) > B0.degree_in(var);
  const MultiPoly& A = swapped ? B0 : A0;
  const MultiPoly& B = swapped ? A0 : B0;
  const int da = static_cast<int>(A.degree_in(var));
  const int db = static_cast<int>(B.degree_in(var));
  const bool negate = swapped && (da * db) % 2 == 1;

  std::vector<int> out_vars;
  std::vector<std::size_t> extent(static_cast<std::size_t>(nv), 1);
  std::size_t points = 1;
  for (int i = 0; i < nv; ++i) {
    if (i == var) continue;
    const std::size_t d = static_cast<std::size_t>(A.degree_in(i)) * static_cast<std::size_t>(db) +
                          static_cast<std::size_t>(B.degree_in(i)) * static_cast<std::size_t>(da);
    if (d == 0) continue;
    if (d > 255) throw BudgetExceeded("resultant degree above 255");
    out_vars.push_back(i);
    extent[static_cast<std::size_t>(i)] = d + 1;
    if (points > max_points / (d + 1)) throw BudgetExceeded("resultant interpolation grid exceeds the point budget");
    points *= d + 1;
  }
  std::vector<std::size_t> grid_extent;
  for (int i : out_vars) grid_extent.push_back(extent[static_cast<std::size_t>(i)]);

  const BigInt bound = pow(one_norm(A), static_cast<unsigned long>(db)) * pow(one_norm(B), static_cast<unsigned long>(da));
  const BigInt need = 2 * bound + 1;

  std::vector<u64> primes;
  std::vector<std::vector<std::uint32_t>> residues;
  BigInt modulus = 1;
  u64 cand = kPrimeCeiling;
  while (modulus <= need) {
    do {
      --cand;
    } while (!is_prime(BigInt(static_cast<unsigned long>(cand))));
    const Mod F{cand};
    const Table ta = tabulate(A, var, extent, F);
    const Table tb = tabulate(B, var, extent, F);
    const auto wa = static_cast<std::size_t>(da + 1);
    const auto wb = static_cast<std::size_t>(db + 1);
    const auto dd = static_cast<std::size_t>(da) * static_cast<std::size_t>(da);

    // Per A-point: lc^db and powers C^0..C^db of the monic companion matrix,
    // or nothing when lc vanishes (Sylvester fallback).
    const std::size_t apoints = ta.vals.size() / wa;
    std::vector<u64> lcpow(apoints, 0);
    std::vector<u64> cpow(apoints * wb * dd, 0);
    for (std::size_t ia = 0; ia < apoints; ++ia) {
      const u64* a = &ta.vals[ia * wa];
      if (a[da] == 0) continue;
      lcpow[ia] = F.pow(a[da], static_cast<u64>(db));
      const u64 il = F.inv(a[da]);
      std::vector<u64> C(dd, 0);
      for (int r = 1; r < da; ++r) C[static_cast<std::size_t>(r * da + r - 1)] = 1;
      for (int r = 0; r < da; ++r) C[static_cast<std::size_t>(r * da + da - 1)] = F.sub(0, F.mul(a[r], il));
      u64* base = &cpow[ia * wb * dd];
      for (int r = 0; r < da; ++r) base[static_cast<std::size_t>(r * da + r)] = 1;
      for (int j = 1; j <= db; ++j) {
        const u64* prev = base + static_cast<std::size_t>(j - 1) * dd;
        u64* cur = base + static_cast<std::size_t>(j) * dd;
        for (int r = 0; r < da; ++r) {
          for (int c = 0; c < da; ++c) {
            u64 acc = 0;
            for (int k = 0; k < da; ++k) {
              acc += prev[r * da + k] * C[static_cast<std::size_t>(k * da + c)];
              if (acc >= kReduceAt) acc %= F.p;
            }
            cur[r * da + c] = acc % F.p;
          }
        }
      }
    }

    // Strides of each grid axis inside the A and B tables.
    const std::size_t axes = out_vars.size();
    std::vector<std::size_t> sa(axes, 0), sb(axes, 0);
    auto strides = [&](const Table& t, std::vector<std::size_t>& s) {
      std::size_t st = 1;
      for (std::size_t j = t.vars.size(); j-- > 0;) {
        const auto pos = static_cast<std::size_t>(std::find(out_vars.begin(), out_vars.end(), t.vars[j]) - out_vars.begin());
        s[pos] = st;
        st *= t.extent[j];
      }
    };
    strides(ta, sa);
    strides(tb, sb);

    std::vector<u64> grid(points);
    std::vector<std::size_t> pt(axes, 0);
    std::size_t ia = 0, ib = 0;
    std::vector<u64> M(dd);
    for (std::size_t g = 0; g < points; ++g) {
      const u64* a = &ta.vals[ia * wa];
      const u64* b = &tb.vals[ib * wb];
      u64 r;
      if (a[da] == 0) {
        r = sylvester_mod(a, da, b, db, F);
      } else {
        const u64* base = &cpow[ia * wb * dd];
        for (std::size_t e = 0; e < dd; ++e) {
          u64 acc = 0;
          for (std::size_t j = 0; j < wb; ++j) {
            acc += b[j] * base[j * dd + e];
            if (acc >= kReduceAt) acc %= F.p;
          }
          M[e] = acc % F.p;
        }
        r = F.mul(lcpow[ia], det_mod(M, da, F));
      }
      grid[g] = negate ? (F.p - r) % F.p : r;
      for (std::size_t j = axes; j-- > 0;) {
        ia += sa[j];
        ib += sb[j];
        if (++pt[j] < grid_extent[j]) break;
        ia -= sa[j] * grid_extent[j];
        ib -= sb[j] * grid_extent[j];
        pt[j] = 0;
      }
    }
    interpolate(grid, grid_extent, F);
    residues.emplace_back(grid.begin(), grid.end());
    primes.push_back(cand);
    modulus *= BigInt(static_cast<unsigned long>(cand));
  }

  // Garner recombination into the symmetric range.
  const std::size_t k = primes.size();
  std::vector<std::vector<u64>> prefix_mod(k, std::vector<u64>(k, 1));  // (p_0...p_{j-1}) mod p_i
  std::vector<u64> inv_prefix(k, 1);
  std::vector<BigInt> prefix(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    const Mod F{primes[i]};
    for (std::size_t j = 1; j <= i; ++j) prefix_mod[i][j] = F.mul(prefix_mod[i][j - 1], primes[j - 1] % F.p);
    inv_prefix[i] = F.inv(prefix_mod[i][i]);
    if (i > 0) prefix[i] = prefix[i - 1] * BigInt(static_cast<unsigned long>(primes[i - 1]));
  }
  const BigInt half = modulus / 2;
  std::vector<MultiPoly::Term> terms;
  std::vector<u64> digit(k);
  std::vector<unsigned> exps(static_cast<std::size_t>(nv), 0);
  std::vector<std::size_t> pt(out_vars.size(), 0);
  for (std::size_t g = 0; g < points; ++g) {
    bool nonzero = false;
    for (std::size_t i = 0; i < k && !nonzero; ++i) nonzero = residues[i][g] != 0;
    if (nonzero) {
      for (std::size_t i = 0; i < k; ++i) {
        const Mod F{primes[i]};
        u64 x = 0;
        for (std::size_t j = 0; j < i; ++j) x = F.add(x, F.mul(digit[j] % F.p, prefix_mod[i][j]));
        digit[i] = F.mul(F.sub(residues[i][g], x), inv_prefix[i]);
      }
      BigInt v = 0;
      for (std::size_t i = 0; i < k; ++i) v += prefix[i] * BigInt(static_cast<unsigned long>(digit[i]));
      if (v > half) v -= modulus;
      for (std::size_t j = 0; j < out_vars.size(); ++j) exps[static_cast<std::size_t>(out_vars[j])] = static_cast<unsigned>(pt[j]);
      terms.emplace_back(MultiPoly::pack(exps), std::move(v));
    }
    for (std::size_t j = out_vars.size(); j-- > 0;) {
      if (++pt[j] < grid_extent[j]) break;
      pt[j] = 0;
    }
  }
  return MultiPoly(nv, std::move(terms));
}

}  // namespace ffdep
