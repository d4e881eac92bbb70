#include "ffdep/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ffdep {

namespace {

using Mono = MultiPoly::Mono;

struct GrlexGreater {
  bool operator()(Mono a, Mono b) const {
    const unsigned ta = MultiPoly::total_degree(a);
    const unsigned tb = MultiPoly::total_degree(b);
    return ta != tb ? ta > tb : a > b;
  }
};

bool divides(Mono small, Mono big) {
  for (int i = 0; i < 8; ++i) {
    if (((small >> (8 * i)) & 0xFF) > ((big >> (8 * i)) & 0xFF)) return false;
  }
  return true;
}

}  // namespace

thread_local std::size_t MultiPoly::term_budget_ = 0;

MultiPoly::BudgetScope::BudgetScope(std::size_t max_term_pairs) : saved_(term_budget_) { term_budget_ = max_term_pairs; }
MultiPoly::BudgetScope::~BudgetScope() { term_budget_ = saved_; }

void MultiPoly::check_nvars() const {
  if (nvars_ < 0 || nvars_ > kMaxVars) throw DomainError("MultiPoly supports at most 8 variables");
}

MultiPoly::MultiPoly(int nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
  check_nvars();
  sort_and_trim();
}

void MultiPoly::sort_and_trim() {
  GrlexGreater gt;
  const bool sorted = std::is_sorted(terms_.begin(), terms_.end(),
                                     [&](const Term& x, const Term& y) { return gt(x.first, y.first); });
  if (!sorted) {
    // Sort small keys, then move the coefficients once.
    struct Key {
      unsigned tdeg;
      std::uint32_t idx;
      Mono mono;
    };
    std::vector<Key> keys(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      keys[i] = {total_degree(terms_[i].first), static_cast<std::uint32_t>(i), terms_[i].first};
    }
    std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
      return x.tdeg != y.tdeg ? x.tdeg > y.tdeg : x.mono > y.mono;
    });
    // Apply the permutation in place by following cycles.
    std::vector<std::uint32_t> src(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) src[i] = keys[i].idx;
    keys.clear();
    keys.shrink_to_fit();
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i] == i) continue;
      Term tmp = std::move(terms_[i]);
      std::size_t j = i;
      while (src[j] != i) {
        const std::size_t k = src[j];
        terms_[j] = std::move(terms_[k]);
        src[j] = static_cast<std::uint32_t>(j);
        j = k;
      }
      terms_[j] = std::move(tmp);
      src[j] = static_cast<std::uint32_t>(j);
    }
  }
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    if (w > 0 && terms_[w - 1].first == terms_[r].first) {
      terms_[w - 1].second += terms_[r].second;
    } else {
      if (w != r) terms_[w] = std::move(terms_[r]);
      ++w;
    }
  }
  terms_.resize(w);
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == 0; }), terms_.end());
}

MultiPoly MultiPoly::constant(int nvars, const BigInt& c) {
  MultiPoly out(nvars);
  if (c != 0) out.terms_.emplace_back(0, c);
  return out;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw DomainError("variable index out of range");
  MultiPoly out(nvars);
  out.terms_.emplace_back(Mono{1} << (8 * (7 - i)), BigInt(1));
  return out;
}

MultiPoly::Mono MultiPoly::pack(std::span<const unsigned> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw DomainError("too many exponents");
  Mono m = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 255) throw BudgetExceeded("exponent above 255");
    m |= Mono{exps[i]} << (8 * (7 - i));
  }
  return m;
}

unsigned MultiPoly::total_degree(Mono m) {
  unsigned t = 0;
  for (int i = 0; i < 8; ++i) t += static_cast<unsigned>((m >> (8 * i)) & 0xFF);
  return t;
}

const MultiPoly::Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of zero");
  return terms_.front();
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

MultiPoly merge_sorted(const MultiPoly& a, const MultiPoly& b, bool subtract) {
  if (a.nvars() != b.nvars()) throw DomainError("MultiPoly variable count mismatch");
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::size_t i = 0, j = 0;
  GrlexGreater gt;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && gt(x[i].first, y[j].first))) {
      out.push_back(x[i++]);
    } else if (i == x.size() || gt(y[j].first, x[i].first)) {
      out.emplace_back(y[j].first, subtract ? BigInt(-y[j].second) : y[j].second);
      ++j;
    } else {
      BigInt c = subtract ? BigInt(x[i].second - y[j].second) : BigInt(x[i].second + y[j].second);
      if (c != 0) out.emplace_back(x[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  MultiPoly r(a.nvars());
  r.terms_ = std::move(out);
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge_sorted(a, b, false); }
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge_sorted(a, b, true); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("MultiPoly variable count mismatch");
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.nvars_);
  if (MultiPoly::term_budget_ != 0 && a.size() * b.size() > MultiPoly::term_budget_) {
    throw BudgetExceeded("MultiPoly product of " + std::to_string(a.size()) + " x " + std::to_string(b.size()) +
                         " terms exceeds the budget");
  }
  for (int i = 0; i < a.nvars_; ++i) {
    if (a.degree_in(i) + b.degree_in(i) > 255) throw BudgetExceeded("MultiPoly exponent above 255");
  }
  std::unordered_map<Mono, BigInt> acc;
  acc.reserve(a.size() * b.size() / 2 + 16);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      BigInt& slot = acc[ma + mb];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  std::vector<MultiPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.emplace_back(m, std::move(c));
  }
  return MultiPoly(a.nvars_, std::move(terms));
}

MultiPoly operator*(const MultiPoly& a, const BigInt& c) {
  if (c == 0) return MultiPoly(a.nvars_);
  MultiPoly out = a;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

MultiPoly MultiPoly::divexact(const BigInt& c) const {
  MultiPoly out = *this;
  out.divexact_inplace(c);
  return out;
}

void MultiPoly::divexact_inplace(const BigInt& c) {
  for (auto& t : terms_) {
    if (!mpz_divisible_p(t.second.get_mpz_t(), c.get_mpz_t())) throw DomainError("MultiPoly::divexact: not divisible");
    mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), c.get_mpz_t());
  }
}

void MultiPoly::negate_inplace() {
  for (auto& t : terms_) t.second = -t.second;
}

void MultiPoly::truncate_vars(int nvars) {
  if (nvars < 0 || nvars > nvars_) throw DomainError("truncate_vars: bad variable count");
  for (int i = nvars; i < nvars_; ++i) {
    if (degree_in(i) != 0) throw DomainError("truncate_vars: dropped variable is present");
  }
  nvars_ = nvars;
}

std::optional<BigInt> MultiPoly::coefficient(Mono m) const {
  GrlexGreater gt;
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [&](const Term& t, Mono key) { return gt(t.first, key); });
  if (it == terms_.end() || it->first != m) return std::nullopt;
  return it->second;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& b) const {
  if (b.is_zero()) throw DomainError("MultiPoly division by zero");
  if (is_zero()) return MultiPoly(nvars_);
  if (b.size() == 1 && b.terms_[0].first == 0) return divexact(b.terms_[0].second);
  std::map<Mono, BigInt, GrlexGreater> rem;
  for (const auto& t : terms_) rem.emplace(t.first, t.second);
  const auto& [lm, lc] = b.leading_term();
  std::vector<Term> quot;
  BigInt t;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!divides(lm, it->first) || !mpz_divisible_p(it->second.get_mpz_t(), lc.get_mpz_t())) {
      throw DomainError("MultiPoly::exact_div: not divisible");
    }
    const Mono qm = it->first - lm;
    mpz_divexact(t.get_mpz_t(), it->second.get_mpz_t(), lc.get_mpz_t());
    rem.erase(it);
    for (std::size_t k = 1; k < b.terms_.size(); ++k) {
      const Mono m = qm + b.terms_[k].first;
      auto [slot, inserted] = rem.try_emplace(m);
      mpz_submul(slot->second.get_mpz_t(), t.get_mpz_t(), b.terms_[k].second.get_mpz_t());
      if (slot->second == 0) rem.erase(slot);
    }
    quot.emplace_back(qm, t);
  }
  MultiPoly out(nvars_);
  out.terms_ = std::move(quot);
  return out;
}

BigInt MultiPoly::content() const {
  BigInt g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

unsigned MultiPoly::degree_in(int var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, exponent(t.first, var));
  return d;
}

unsigned MultiPoly::total_degree() const { return terms_.empty() ? 0 : total_degree(terms_.front().first); }

std::vector<MultiPoly> MultiPoly::coefficients_in(int var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  const int shift = 8 * (7 - var);
  for (const auto& t : terms_) {
    const unsigned e = exponent(t.first, var);
    buckets[e].emplace_back(t.first & ~(Mono{0xFF} << shift), t.second);
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(nvars_, std::move(b));
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& c, int var) {
  if (c.empty()) return MultiPoly();
  std::vector<Term> terms;
  const int shift = 8 * (7 - var);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 255) throw BudgetExceeded("MultiPoly exponent above 255");
    for (const auto& t : c[k].terms()) {
      if (exponent(t.first, var) != 0) throw DomainError("coefficient already depends on the variable");
      terms.emplace_back(t.first | (Mono{k} << shift), t.second);
    }
  }
  return MultiPoly(c.front().nvars(), std::move(terms));
}

MultiPoly MultiPoly::rename(const std::vector<int>& map, int nvars) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Mono m = 0;
    for (int i = 0; i < nvars_; ++i) {
      const unsigned e = exponent(t.first, i);
      if (e == 0) continue;
      const int j = map.at(static_cast<std::size_t>(i));
      if (j < 0 || j >= nvars) throw DomainError("rename target out of range");
      const unsigned sum = exponent(m, j) + e;
      if (sum > 255) throw BudgetExceeded("MultiPoly exponent above 255");
      m += Mono{e} << (8 * (7 - j));
    }
    terms.emplace_back(m, t.second);
  }
  return MultiPoly(nvars, std::move(terms));
}

std::vector<std::uint64_t> MultiPoly::coefficients_mod(std::uint64_t m) const {
  std::vector<std::uint64_t> out(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) out[i] = mpz_fdiv_ui(terms_[i].second.get_mpz_t(), m);
  return out;
}

BigInt MultiPoly::max_abs_coefficient() const {
  BigInt h = 0;
  for (const auto& t : terms_) {
    if (mpz_cmpabs(t.second.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(t.second);
  }
  return h;
}

std::string MultiPoly::serialize() const {
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    os << c.get_str() << ':';
    for (int i = 0; i < nvars_; ++i) os << (i ? "," : "") << exponent(m, i);
    os << '\n';
  }
  return os.str();
}

MultiPoly MultiPoly::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<Term> terms;
  int nvars = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw DomainError("bad MultiPoly line '" + line + "'");
    const BigInt c = parse_bigint(line.substr(0, colon));
    std::vector<unsigned> exps;
    std::stringstream es(line.substr(colon + 1));
    std::string item;
    while (std::getline(es, item, ',')) exps.push_back(static_cast<unsigned>(std::stoul(item)));
    if (nvars < 0) nvars = static_cast<int>(exps.size());
    if (static_cast<int>(exps.size()) != nvars) throw DomainError("inconsistent variable count");
    terms.emplace_back(pack(exps), c);
  }
  return MultiPoly(std::max(nvars, 0), std::move(terms));
}

bool is_zero(const MultiPoly& a) { return a.is_zero(); }
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) { return a.exact_div(b); }

}  // namespace ffdep
