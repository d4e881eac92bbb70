#include "ffdep/curve.hpp"

#include "ffdep/ratfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ffdep {

// ---------------------------------------------------------------- CurveQ

CurveQ::CurveQ(BigRat a_, BigRat b_) : a(std::move(a_)), b(std::move(b_)) {
  a.canonicalize();
  b.canonicalize();
  if (discriminant_part() == 0) throw DomainError("singular curve: 4a^3 + 27b^2 = 0");
}

BigRat CurveQ::discriminant_part() const { return 4 * a * a * a + 27 * b * b; }

CurveQ CurveQ::parse(const std::string& spec) {
  std::optional<BigRat> a, b;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("bad curve spec '" + spec + "'");
    std::string key = item.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    const BigRat v = parse_rational(item.substr(eq + 1));
    if (key == "a") {
      a = v;
    } else if (key == "b") {
      b = v;
    } else {
      throw DomainError("bad curve spec '" + spec + "': unknown key '" + key + "'");
    }
    start = comma + 1;
  }
  if (!a || !b) throw DomainError("bad curve spec '" + spec + "': need a and b");
  return CurveQ(*a, *b);
}

std::string CurveQ::to_string() const { return "a=" + a.get_str() + ",b=" + b.get_str(); }

// ---------------------------------------------------------------- CurveFq

CurveFq::CurveFq(FieldPtr ctx, Code a, Code b) : ctx_(std::move(ctx)), a_(a), b_(b) {
  if (ctx_->p() == 2) throw BadReduction("short Weierstrass model is singular in characteristic 2");
  const FieldCtx& F = *ctx_;
  const Code disc = F.add(F.mul(F.from_int(4), F.mul(a_, F.sqr(a_))), F.mul(F.from_int(27), F.sqr(b_)));
  if (disc == 0) throw BadReduction("4a^3 + 27b^2 vanishes in " + F.spec());
}

bool CurveFq::same_curve(const CurveFq& o) const {
  return ctx_->same_field(*o.ctx_) && a_ == o.a_ && b_ == o.b_;
}

Code CurveFq::rhs(Code x) const {
  const FieldCtx& F = *ctx_;
  return F.add(F.mul(F.add(F.sqr(x), a_), x), b_);
}

bool CurveFq::on_curve(const PointFq& P) const { return P.infinity || ctx_->sqr(P.y) == rhs(P.x); }

PointFq CurveFq::neg(const PointFq& P) const {
  if (P.infinity) return P;
  return PointFq::affine(P.x, ctx_->neg(P.y));
}

PointFq CurveFq::add(const PointFq& P, const PointFq& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const FieldCtx& F = *ctx_;
  Code lambda;
  if (P.x == Q.x) {
    if (F.add(P.y, Q.y) == 0) return PointFq::at_infinity();
    lambda = F.div(F.add(F.mul(F.from_int(3), F.sqr(P.x)), a_), F.add(P.y, P.y));
  } else {
    lambda = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
  }
  const Code x3 = F.sub(F.sub(F.sqr(lambda), P.x), Q.x);
  const Code y3 = F.sub(F.mul(lambda, F.sub(P.x, x3)), P.y);
  return PointFq::affine(x3, y3);
}

PointFq CurveFq::scalar_mul(long long k, const PointFq& P) const {
  PointFq base = k < 0 ? neg(P) : P;
  unsigned long long e = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
  PointFq acc = PointFq::at_infinity();
  while (e) {
    if (e & 1) acc = add(acc, base);
    e >>= 1;
    if (e) base = dbl(base);
  }
  return acc;
}

std::vector<PointFq> CurveFq::affine_points() const {
  std::vector<PointFq> out;
  const FieldCtx& F = *ctx_;
  for (Code x = 0; x < F.q(); ++x) {
    const Code r = rhs(x);
    if (r == 0) {
      out.push_back(PointFq::affine(x, 0));
      continue;
    }
    if (auto y = F.sqrt(r)) {
      const Code y1 = *y;
      const Code y2 = F.neg(y1);
      out.push_back(PointFq::affine(x, std::min(y1, y2)));
      out.push_back(PointFq::affine(x, std::max(y1, y2)));
    }
  }
  return out;
}

std::uint64_t CurveFq::group_order() const {
  if (order_cache_ != 0) return order_cache_;
  const FieldCtx& F = *ctx_;
  if (F.q() > 1000000) throw BudgetExceeded("point count by enumeration needs q <= 10^6");
  std::uint64_t n = 1;
  for (Code x = 0; x < F.q(); ++x) {
    const Code r = rhs(x);
    if (r == 0) {
      n += 1;
    } else if (F.is_square(r)) {
      n += 2;
    }
  }
  order_cache_ = n;
  return n;
}

namespace {

std::uint64_t reduce_order(const CurveFq& E, const PointFq& P, std::uint64_t multiple) {
  std::uint64_t n = multiple;
  for (const auto& [r, e] : factorize(n)) {
    const std::uint64_t rr = r.get_ui();
    for (unsigned i = 0; i < e; ++i) {
      if (!E.scalar_mul(static_cast<long long>(n / rr), P).infinity) break;
      n /= rr;
    }
  }
  return n;
}

}  // namespace

std::uint64_t CurveFq::point_order(const PointFq& P) const {
  if (P.infinity) return 1;
  const std::uint64_t q = ctx_->q();
  if (q <= 10000) return reduce_order(*this, P, group_order());
  // Baby-step giant-step over the Hasse window [q+1-2sqrt(q), q+1+2sqrt(q)].
  const auto s = static_cast<std::uint64_t>(std::ceil(2.0 * std::sqrt(static_cast<double>(q))));
  const std::uint64_t lo = q + 1 > s ? q + 1 - s : 1;
  const std::uint64_t width = 2 * s + 1;
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width)))) + 1;
  std::map<std::pair<Code, Code>, std::uint64_t> baby;
  PointFq cur = PointFq::at_infinity();
  for (std::uint64_t j = 0; j < m; ++j) {
    if (cur.infinity) {
      if (j > 0) return reduce_order(*this, P, j);
    } else {
      baby.emplace(std::make_pair(cur.x, cur.y), j);
    }
    cur = add(cur, P);
  }
  const PointFq step = scalar_mul(static_cast<long long>(m), P);
  PointFq R = scalar_mul(static_cast<long long>(lo), P);
  for (std::uint64_t i = 0; i <= m + 1; ++i) {
    const std::uint64_t base = lo + i * m;
    if (R.infinity) return reduce_order(*this, P, base);
    const PointFq nr = neg(R);
    if (auto it = baby.find({nr.x, nr.y}); it != baby.end()) return reduce_order(*this, P, base + it->second);
    R = add(R, step);
  }
  throw DomainError("point order not found in the Hasse window");
}

CurveFq CurveFq::base_change(const QuadraticExtension& ext) const {
  if (!ext.base->same_field(*ctx_)) throw DomainError("base change from a different field");
  return CurveFq(ext.ext, ext.embed(a_), ext.embed(b_));
}

std::string CurveFq::to_string() const {
  return "a=" + ctx_->format(a_) + ",b=" + ctx_->format(b_) + " over F_" + ctx_->spec();
}

CurveFq reduce_mod_p(const CurveQ& E, const FieldPtr& ctx) {
  const FieldCtx& F = *ctx;
  const Code da = F.from_bigint(E.a.get_den());
  const Code db = F.from_bigint(E.b.get_den());
  if (da == 0 || db == 0) throw BadReduction("coefficient denominator divisible by " + std::to_string(F.p()));
  const Code a = F.div(F.from_bigint(E.a.get_num()), da);
  const Code b = F.div(F.from_bigint(E.b.get_num()), db);
  return CurveFq(ctx, a, b);
}

OrdEpResult ord_Ep(Code alpha, const CurveFq& E) {
  const FieldCtx& F = *E.ctx();
  const Code r = E.rhs(alpha);
  if (auto beta = F.sqrt(r)) return {E.point_order(PointFq::affine(alpha, *beta)), false};
  const QuadraticExtension ext = quadratic_extension(E.ctx());
  const CurveFq E2 = E.base_change(ext);
  const auto beta = ext.ext->sqrt(ext.embed(r));
  if (!beta) throw DomainError("no square root in the quadratic extension");
  return {E2.point_order(PointFq::affine(ext.embed(alpha), *beta)), true};
}

// ---------------------------------------------------------------- division polynomials

namespace {

// Weight of Psi_n under X:2, a:4, b:6.
long psi_weight(int n) {
  if (n == 0) return 0;
  const long nn = static_cast<long>(n) * n;
  return (n % 2) ? nn - 1 : nn - 4;
}

// P(X) = u^(-w) Pm(u^2 X) where Pm is the same object on the scaled model.
RatPoly unscale(const IntPoly& model, const BigInt& u, long w) {
  std::vector<BigRat> c(model.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long e = 2 * static_cast<long>(i) - w;
    BigRat v(model.coeffs()[i]);
    if (e >= 0) {
      v *= BigRat(pow(u, static_cast<unsigned long>(e)));
    } else {
      v /= BigRat(pow(u, static_cast<unsigned long>(-e)));
    }
    c[i] = v;
  }
  return RatPoly(std::move(c));
}

struct IntModel {
  BigInt u;
  BigInt a;
  BigInt b;
  IntPoly cubic;
  std::vector<IntPoly> psi;
};

template <class P, class Ops>
std::vector<P> psi_recurrence(int N, const P& c0, const P& c1, const P& c2, const P& c3, const P& c4,
                              const P& cubic_sq, const Ops& ops) {
  std::vector<P> psi{c0, c1, c2, c3, c4};
  psi.resize(static_cast<std::size_t>(std::max(N + 1, 5)));
  for (int n = 5; n <= N; ++n) {
    const int m = n / 2;
    auto at = [&](int k) -> const P& { return psi[static_cast<std::size_t>(k)]; };
    if (n % 2) {
      P first = ops.mul(at(m + 2), ops.cube(at(m)));
      P second = ops.mul(at(m - 1), ops.cube(at(m + 1)));
      if (m % 2 == 0) {
        first = ops.mul(first, cubic_sq);
      } else {
        second = ops.mul(second, cubic_sq);
      }
      psi[static_cast<std::size_t>(n)] = ops.sub(first, second);
    } else {
      P inner = ops.sub(ops.mul(at(m + 2), ops.sqr(at(m - 1))), ops.mul(at(m - 2), ops.sqr(at(m + 1))));
      psi[static_cast<std::size_t>(n)] = ops.half(ops.mul(at(m), inner));
    }
  }
  psi.resize(static_cast<std::size_t>(N + 1));
  return psi;
}

struct IntOps {
  IntPoly mul(const IntPoly& a, const IntPoly& b) const { return a * b; }
  IntPoly sqr(const IntPoly& a) const { return a * a; }
  IntPoly cube(const IntPoly& a) const { return a * a * a; }
  IntPoly sub(const IntPoly& a, const IntPoly& b) const { return a - b; }
  IntPoly half(const IntPoly& a) const { return a.divexact(2); }
};

IntModel build_model(const CurveQ& E, int N) {
  IntModel m;
  m.u = E.a.get_den() * E.b.get_den();
  m.a = E.a.get_num() * (pow(m.u, 4) / E.a.get_den());
  m.b = E.b.get_num() * (pow(m.u, 6) / E.b.get_den());
  const BigInt& a = m.a;
  const BigInt& b = m.b;
  m.cubic = IntPoly(std::vector<BigInt>{b, a, 0, 1});
  const IntPoly psi3(std::vector<BigInt>{-a * a, 12 * b, 6 * a, 0, 3});
  const IntPoly psi4 = IntPoly(std::vector<BigInt>{-8 * b * b - a * a * a, -4 * a * b, -5 * a * a, 20 * b, 5 * a, 0, 1}) *
                       BigInt(4);
  m.psi = psi_recurrence<IntPoly>(N, IntPoly(), IntPoly::constant(1), IntPoly::constant(2), psi3, psi4,
                                  m.cubic * m.cubic, IntOps{});
  return m;
}

}  // namespace

DivPolyTable::DivPolyTable(const CurveQ& E, int nmax) : curve_(E), nmax_(nmax) {
  if (nmax < 0) throw DomainError("division polynomial index must be >= 0");
  IntModel m = build_model(E, nmax + 1);
  cubic_ = RatPoly(std::vector<BigRat>{E.b, E.a, 0, 1});
  u_ = m.u;
  model_cubic_ = m.cubic;
  model_psi_ = std::move(m.psi);
  psi_.reserve(model_psi_.size());
  for (int n = 0; n <= nmax + 1; ++n) {
    const IntPoly& mp = model_psi_[static_cast<std::size_t>(n)];
    psi_.push_back(u_ == 1 ? RatPoly(mp) : unscale(mp, u_, psi_weight(n)));
  }
}

const RatPoly& DivPolyTable::psi(int n) const {
  if (n < 0 || n > nmax_ + 1) throw DomainError("division polynomial index out of range");
  return psi_[static_cast<std::size_t>(n)];
}

DivPoly DivPolyTable::get(int n) const {
  if (n < 0 || n > nmax_) throw DomainError("division polynomial index out of range");
  DivPoly out;
  out.n = n;
  out.even = n % 2 == 0;
  out.psi_exact = psi(n);
  if (n > 0) {
    // Work on the integral model and rescale; weights are 2n^2 for phi_n and
    // 2n^2 - 2 for psi_n^2.
    auto at = [&](int k) -> const IntPoly& { return model_psi_[static_cast<std::size_t>(k)]; };
    const IntPoly X = IntPoly::x();
    IntPoly sq = at(n) * at(n);
    IntPoly phi;
    if (out.even) {
      sq = model_cubic_ * sq;
      phi = X * sq - at(n + 1) * at(n - 1);
    } else {
      phi = X * sq - model_cubic_ * at(n + 1) * at(n - 1);
    }
    const long nn = static_cast<long>(n) * n;
    if (u_ == 1) {
      out.phi_exact = RatPoly(phi);
      out.psi_sq_exact = RatPoly(sq);
      out.poly = at(n);
      out.phi = std::move(phi);
      out.psi_sq = std::move(sq);
      return out;
    }
    out.phi_exact = unscale(phi, u_, 2 * nn);
    out.psi_sq_exact = unscale(sq, u_, 2 * nn - 2);
  }
  std::tie(out.poly, out.poly_factor) = out.psi_exact.to_integral();
  std::tie(out.phi, out.phi_factor) = out.phi_exact.to_integral();
  std::tie(out.psi_sq, out.psi_sq_factor) = out.psi_sq_exact.to_integral();
  return out;
}

DivPoly division_poly(const CurveQ& E, int n) { return DivPolyTable(E, n).get(n); }

std::optional<BigRat> x_of_nP(const DivPolyTable& table, int n, const BigRat& x) {
  const DivPoly d = table.get(n);
  const BigRat den = d.psi_sq_exact.evaluate(x);
  if (den == 0) return std::nullopt;
  return d.phi_exact.evaluate(x) / den;
}

namespace {

struct FqOps {
  const FieldCtx* F;
  Code inv2;
  FqPoly mul(const FqPoly& a, const FqPoly& b) const { return poly_mul(a, b, *F); }
  FqPoly sqr(const FqPoly& a) const { return poly_mul(a, a, *F); }
  FqPoly cube(const FqPoly& a) const { return poly_mul(poly_mul(a, a, *F), a, *F); }
  FqPoly sub(const FqPoly& a, const FqPoly& b) const { return poly_sub(a, b, *F); }
  FqPoly half(const FqPoly& a) const { return poly_scale(a, inv2, *F); }
};

}  // namespace

DivPolyTableFq::DivPolyTableFq(const CurveFq& E, int nmax) : curve_(E) {
  const FieldCtx& F = *E.ctx();
  const Code a = E.a();
  const Code b = E.b();
  auto c = [&](long long v) { return F.from_int(v); };
  cubic_ = FqPoly{b, a, 0, 1};
  auto trimmed = [](FqPoly v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  };
  const FqPoly psi3 = trimmed({F.neg(F.sqr(a)), F.mul(c(12), b), F.mul(c(6), a), 0, c(3)});
  const FqPoly psi4 = poly_scale(trimmed({F.neg(F.add(F.mul(c(8), F.sqr(b)), F.mul(a, F.sqr(a)))),
                                          F.neg(F.mul(c(4), F.mul(a, b))), F.neg(F.mul(c(5), F.sqr(a))),
                                          F.mul(c(20), b), F.mul(c(5), a), 0, 1}),
                                 c(4), F);
  psi_ = psi_recurrence<FqPoly>(nmax + 1, FqPoly{}, trimmed({1}), trimmed({c(2)}), psi3, psi4,
                                poly_mul(cubic_, cubic_, F), FqOps{&F, F.inv(c(2))});
}

FqPoly DivPolyTableFq::psi_sq(int n) const {
  const FieldCtx& F = *curve_.ctx();
  FqPoly sq = poly_mul(psi(n), psi(n), F);
  return n % 2 ? sq : poly_mul(cubic_, sq, F);
}

FqPoly DivPolyTableFq::phi(int n) const {
  const FieldCtx& F = *curve_.ctx();
  if (n == 0) return {};
  const FqPoly X = {0, 1};
  const FqPoly prod = poly_mul(psi(n + 1), psi(n - 1), F);
  if (n % 2) return poly_sub(poly_mul(X, psi_sq(n), F), poly_mul(cubic_, prod, F), F);
  return poly_sub(poly_mul(X, psi_sq(n), F), prod, F);
}

std::optional<Code> x_of_nP(const DivPolyTableFq& table, const CurveFq& E, int n, Code x) {
  const FieldCtx& F = *E.ctx();
  const Code den = evaluate(table.psi_sq(n), x, F);
  if (den == 0) return std::nullopt;
  return F.div(evaluate(table.phi(n), x, F), den);
}

std::vector<DivHeightRow> divpoly_height_profile(const CurveQ& E, int nmax) {
  if (nmax < 1) throw DomainError("nmax must be >= 1");
  const DivPolyTable table(E, nmax);
  std::vector<DivHeightRow> out;
  for (int n = 1; n <= nmax; ++n) {
    const DivPoly d = table.get(n);
    out.push_back({n, log_height(d.poly), log_height(d.phi)});
  }
  return out;
}

}  // namespace ffdep
