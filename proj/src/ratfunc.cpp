#include "ffdep/ratfunc.hpp"

#include <cctype>

namespace ffdep {

RatFunc::RatFunc(IntPoly num, IntPoly den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = IntPoly();
    den_ = IntPoly::constant(1);
    return;
  }
  if (den.degree() > 0 && num.degree() > 0) {
    const IntPoly g = gcd(num, den);
    if (g.degree() > 0) {
      num = divide_exact(num, g);
      den = divide_exact(den, g);
    }
  }
  BigInt c;
  const BigInt cn = num.content();
  const BigInt cd = den.content();
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (den.leading() < 0) c = -c;
  if (c != 1) {
    num = num.divexact(c);
    den = den.divexact(c);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

RatFunc RatFunc::constant(const BigRat& c) {
  return RatFunc(IntPoly::constant(c.get_num()), IntPoly::constant(c.get_den()));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw DomainError("negative power of zero");
    return RatFunc(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
  }
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

IntPoly homogeneous_compose(const IntPoly& p, const IntPoly& u, const IntPoly& v, int D) {
  const int dp = p.degree();
  if (dp < 0) return {};
  if (D < dp) throw DomainError("homogeneous_compose: D below the degree");
  std::vector<IntPoly> vpow{IntPoly::constant(1)};
  for (int i = 1; i <= D; ++i) vpow.push_back(vpow.back() * v);
  // Horner in u: after step i, acc = sum_{j>=i} c_j u^(j-i) v^(dp-j).
  IntPoly acc = IntPoly::constant(p.coeff(static_cast<std::size_t>(dp)));
  for (int i = dp - 1; i >= 0; --i) {
    acc = acc * u + p.coeff(static_cast<std::size_t>(i)) * vpow[static_cast<std::size_t>(dp - i)];
  }
  return acc * vpow[static_cast<std::size_t>(D - dp)];
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
  const int D = degree();
  if (D <= 0) return *this;
  const IntPoly& u = inner.num_;
  const IntPoly& v = inner.den_;
  return RatFunc(homogeneous_compose(num_, u, v, D), homogeneous_compose(den_, u, v, D));
}

BigRat RatFunc::evaluate(const BigRat& x) const {
  const BigRat d = den_.evaluate(x);
  if (d == 0) throw DomainError("evaluation at a pole");
  return num_.evaluate(x) / d;
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) {
    if (den_.leading() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/" + den_.leading().get_str();
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

// expr := term (('+'|'-') term)*
// term := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ('^' '-'? integer)?
// atom := integer | 'X' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BigInt integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(s_.substr(start, pos_ - start));
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        acc = acc / unary();
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!eat('^')) return base;
    const bool neg = eat('-');
    const BigInt e = integer();
    if (e > 4096) fail("exponent too large");
    const long ev = e.get_si();
    return base.pow(neg ? -ev : ev);
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      return RatFunc::x();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(IntPoly::constant(integer()));
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text) { return Parser(text).parse_all(); }

std::vector<RatFunc> parse_ratfunc_list(const std::string& text) {
  std::vector<RatFunc> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(parse_ratfunc(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(parse_ratfunc(cur));
  return out;
}

BigRat parse_rational(const std::string& text) {
  const RatFunc r = parse_ratfunc(text);
  if (r.degree() > 0) throw DomainError("expected a rational constant: '" + text + "'");
  if (r.is_zero()) return 0;
  BigRat q(r.num().leading(), r.den().leading());
  q.canonicalize();
  return q;
}

IntPoly parse_int_poly(const std::string& text) {
  const RatFunc r = parse_ratfunc(text);
  if (!r.is_polynomial()) throw DomainError("not a polynomial: '" + text + "'");
  const BigInt& d = r.den().leading();
  if (d != 1) throw DomainError("polynomial with non-integer coefficients: '" + text + "'");
  return r.num();
}

}  // namespace ffdep
