#include "qdiff/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace qdiff {

namespace {

BigInt int_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (!b.is_zero()) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Remainder of a by a monic divisor; integer coefficients are preserved.
IntPoly rem_monic(IntPoly a, const IntPoly& m) {
  while (!a.is_zero() && a.degree() >= m.degree()) {
    int shift = a.degree() - m.degree();
    BigInt c = a.leading();
    std::vector<BigInt> sub(static_cast<size_t>(shift), BigInt(0));
    sub.push_back(c);
    a = a - m * IntPoly(std::move(sub));
  }
  return a;
}

// Arbitrary-precision rational, only used inside the cyclotomic inversion.
struct Rat {
  BigInt n{0}, d{1};
  Rat() = default;
  Rat(BigInt nn, BigInt dd) : n(std::move(nn)), d(std::move(dd)) { reduce(); }
  explicit Rat(BigInt nn) : n(std::move(nn)) {}
  void reduce() {
    if (d < 0) { n = -n; d = -d; }
    BigInt g = int_gcd(n, d);
    if (!g.is_zero()) { n /= g; d /= g; }
    if (n.is_zero()) d = 1;
  }
  bool is_zero() const { return n.is_zero(); }
  Rat operator+(const Rat& r) const { return Rat(n * r.d + r.n * d, d * r.d); }
  Rat operator-(const Rat& r) const { return Rat(n * r.d - r.n * d, d * r.d); }
  Rat operator*(const Rat& r) const { return Rat(n * r.n, d * r.d); }
  Rat operator/(const Rat& r) const {
    if (r.is_zero()) throw error("rational division by zero");
    return Rat(n * r.d, d * r.n);
  }
};

using RatPoly = std::vector<Rat>;  // coefficient k of q^k, trailing zeros trimmed

void rp_trim(RatPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

RatPoly rp_from(const IntPoly& p) {
  RatPoly r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

RatPoly rp_sub_mul(const RatPoly& a, const RatPoly& s, const RatPoly& b) {
  // a - s*b
  RatPoly prod(a.begin(), a.end());
  size_t need = s.size() + b.size();
  if (prod.size() < need) prod.resize(need == 0 ? 0 : need - 1);
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = prod[i + j] - s[i] * b[j];
  rp_trim(prod);
  return prod;
}

// division with remainder over the rationals: a = quo*b + rem
void rp_divmod(const RatPoly& a, const RatPoly& b, RatPoly& quo, RatPoly& rem) {
  rem = a;
  quo.assign(a.size(), Rat());
  while (!rem.empty() && rem.size() >= b.size()) {
    size_t shift = rem.size() - b.size();
    Rat c = rem.back() / b.back();
    RatPoly s(shift + 1, Rat());
    s[shift] = c;
    quo[shift] = quo[shift] + c;
    rem = rp_sub_mul(rem, s, b);
  }
  rp_trim(quo);
}

}  // namespace

IntPoly::IntPoly(BigInt constant) {
  if (!constant.is_zero()) coef_.push_back(std::move(constant));
}

IntPoly::IntPoly(std::vector<BigInt> coef) : coef_(std::move(coef)) { trim(); }

void IntPoly::trim() {
  while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
}

IntPoly IntPoly::variable() { return IntPoly(std::vector<BigInt>{BigInt(0), BigInt(1)}); }

bool IntPoly::is_one() const { return coef_.size() == 1 && coef_[0] == 1; }

const BigInt& IntPoly::leading() const {
  if (coef_.empty()) throw error("leading() of zero polynomial");
  return coef_.back();
}

BigInt IntPoly::coeff(size_t k) const {
  return k < coef_.size() ? coef_[k] : BigInt(0);
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> c(coef_);
  for (auto& x : c) x = -x;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator+(const IntPoly& r) const {
  std::vector<BigInt> c(std::max(coef_.size(), r.coef_.size()), BigInt(0));
  for (size_t i = 0; i < coef_.size(); ++i) c[i] += coef_[i];
  for (size_t i = 0; i < r.coef_.size(); ++i) c[i] += r.coef_[i];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& r) const { return *this + (-r); }

IntPoly IntPoly::operator*(const IntPoly& r) const {
  if (is_zero() || r.is_zero()) return IntPoly();
  std::vector<BigInt> c(coef_.size() + r.coef_.size() - 1, BigInt(0));
  for (size_t i = 0; i < coef_.size(); ++i)
    for (size_t j = 0; j < r.coef_.size(); ++j)
      c[i + j] += coef_[i] * r.coef_[j];
  return IntPoly(std::move(c));
}

bool IntPoly::operator<(const IntPoly& r) const {
  if (coef_.size() != r.coef_.size()) return coef_.size() < r.coef_.size();
  for (size_t i = coef_.size(); i-- > 0;)
    if (coef_[i] != r.coef_[i]) return coef_[i] < r.coef_[i];
  return false;
}

BigInt IntPoly::content() const {
  BigInt g(0);
  for (const auto& c : coef_) g = int_gcd(g, c);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  return div_scalar_exact(content());
}

IntPoly IntPoly::mul_scalar(const BigInt& k) const {
  std::vector<BigInt> c(coef_);
  for (auto& x : c) x *= k;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::div_scalar_exact(const BigInt& k) const {
  if (k.is_zero()) throw error("division by zero constant");
  std::vector<BigInt> c(coef_);
  for (auto& x : c) {
    if (!BigInt(x % k).is_zero()) throw error("inexact scalar division of polynomial");
    x /= k;
  }
  return IntPoly(std::move(c));
}

IntPoly IntPoly::divide_exact(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw error("polynomial division by zero");
  RatPoly quo, rem;
  rp_divmod(rp_from(num), rp_from(den), quo, rem);
  if (!rem.empty()) throw error("inexact polynomial division");
  // clear denominators; by Gauss's lemma the quotient is integral when both
  // inputs are and the division is exact up to content handled by callers
  std::vector<BigInt> c(quo.size());
  for (size_t i = 0; i < quo.size(); ++i) {
    if (quo[i].d != 1) throw error("inexact polynomial division (content)");
    c[i] = quo[i].n;
  }
  return IntPoly(std::move(c));
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive_part().mul_scalar(b.content());
  if (b.is_zero()) return a;
  BigInt cont = int_gcd(a.content(), b.content());
  RatPoly x = rp_from(a.primitive_part());
  RatPoly y = rp_from(b.primitive_part());
  while (!y.empty()) {
    RatPoly quo, rem;
    rp_divmod(x, y, quo, rem);
    x = std::move(y);
    y = std::move(rem);
  }
  // normalize to a primitive integer polynomial with positive leading coeff
  BigInt lcm(1);
  for (const auto& c : x) lcm = lcm / int_gcd(lcm, c.d) * c.d;
  std::vector<BigInt> c(x.size());
  for (size_t i = 0; i < x.size(); ++i) c[i] = x[i].n * (lcm / x[i].d);
  IntPoly g(std::move(c));
  g = g.primitive_part();
  if (!g.is_zero() && g.leading() < 0) g = -g;
  return g.mul_scalar(cont);
}

IntPoly IntPoly::cyclotomic(unsigned n) {
  if (n == 0) throw error("cyclotomic order must be positive");
  // q^n - 1 divided by the product of Phi_d over proper divisors d of n
  std::vector<BigInt> top(n + 1, BigInt(0));
  top[0] = -1;
  top[n] = 1;
  IntPoly result(std::move(top));
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    result = divide_exact(result, cyclotomic(d));
  }
  return result;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t k = 0; k < coef_.size(); ++k) {
    const BigInt& c = coef_[k];
    if (c.is_zero()) continue;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? "-" : "+");
    }
    bool coeff_one = (a == 1);
    if (k == 0) {
      out << a.str();
    } else {
      if (!coeff_one) out << a.str() << "*";
      out << "q";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

ScalarField ScalarField::cyclotomic(unsigned n) {
  if (n < 2) throw error("cyclotomic(N) requires N >= 2");
  return {FieldKind::cyclotomic, n};
}

const IntPoly& ScalarField::modulus() const {
  if (kind != FieldKind::cyclotomic) throw error("modulus() on non-cyclotomic field");
  static std::map<unsigned, IntPoly> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, IntPoly::cyclotomic(n)).first;
  return it->second;
}

std::string ScalarField::to_string() const {
  switch (kind) {
    case FieldKind::rationals: return "rationals";
    case FieldKind::rational_q: return "rational_q";
    case FieldKind::cyclotomic: return "cyclotomic:" + std::to_string(n);
  }
  return "?";
}

ScalarField ScalarField::parse(const std::string& s) {
  if (s == "rationals" || s == "rational") return rationals();
  if (s == "rational_q" || s == "q") return rational_q();
  if (s.rfind("cyclotomic:", 0) == 0) {
    unsigned n = static_cast<unsigned>(std::stoul(s.substr(11)));
    return cyclotomic(n);
  }
  throw error("unknown scalar field: " + s);
}

Scalar::Scalar(ScalarField f) : field_(f), num_(), den_(BigInt(1)) {}

Scalar Scalar::one(ScalarField f) { return from_poly(f, IntPoly(BigInt(1))); }

Scalar Scalar::integer(ScalarField f, long v) { return from_poly(f, IntPoly(BigInt(v))); }

Scalar Scalar::fraction(ScalarField f, long num, long den) {
  return from_poly(f, IntPoly(BigInt(num)), IntPoly(BigInt(den)));
}

Scalar Scalar::q(ScalarField f) {
  if (!f.has_q()) throw error("field has no deformation parameter q");
  return from_poly(f, IntPoly::variable());
}

Scalar Scalar::q_power(ScalarField f, long e) {
  return q(f).pow(e);
}

Scalar Scalar::from_poly(ScalarField f, IntPoly num, IntPoly den) {
  Scalar s(f);
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  s.normalize();
  return s;
}

void Scalar::normalize() {
  if (den_.is_zero()) throw error("scalar division by zero");
  if (field_.kind == FieldKind::rationals) {
    if (num_.degree() > 0 || den_.degree() > 0)
      throw error("q does not exist in the rationals field");
  }
  if (num_.is_zero()) {
    den_ = IntPoly(BigInt(1));
    return;
  }
  if (field_.kind == FieldKind::cyclotomic) {
    const IntPoly& phi = field_.modulus();
    num_ = rem_monic(num_, phi);
    den_ = rem_monic(den_, phi);
    if (den_.is_zero()) throw error("scalar division by zero (denominator reduces to 0)");
    if (num_.is_zero()) {
      num_ = IntPoly();
      den_ = IntPoly(BigInt(1));
      return;
    }
    if (den_.degree() > 0) {
      // invert den mod Phi_n by the extended Euclidean algorithm over Q[q]
      RatPoly r0 = rp_from(phi), r1 = rp_from(den_);
      RatPoly t0, t1{Rat(BigInt(1))};
      while (r1.size() > 1) {
        RatPoly quo, rem;
        rp_divmod(r0, r1, quo, rem);
        RatPoly t2 = rp_sub_mul(t0, quo, t1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
      }
      if (r1.empty()) throw error("denominator not invertible in cyclotomic field");
      Rat c = r1[0];  // den * t1 == c (mod phi)
      // clear denominators: t1 = T / w with integer T
      BigInt w(1);
      for (const auto& x : t1) w = w / int_gcd(w, x.d) * x.d;
      std::vector<BigInt> tc(t1.size());
      for (size_t i = 0; i < t1.size(); ++i) tc[i] = t1[i].n * (w / t1[i].d);
      IntPoly T(std::move(tc));
      // num/den = num * T * c.d / (c.n * w)
      num_ = rem_monic(num_ * T.mul_scalar(c.d), phi);
      den_ = IntPoly(c.n * w);
    }
    // here den_ is a nonzero integer constant
    BigInt d = den_.coeff(0);
    if (d < 0) { d = -d; num_ = -num_; }
    BigInt g = int_gcd(num_.content(), d);
    num_ = num_.div_scalar_exact(g);
    den_ = IntPoly(d / g);
    return;
  }
  if (den_.is_one()) return;
  if (den_.degree() == 0) {  // constant denominator: content and sign only
    BigInt d = den_.coeff(0);
    if (d < 0) {
      num_ = -num_;
      d = -d;
    }
    BigInt g = int_gcd(num_.content(), d);
    if (g > 1) {
      num_ = num_.div_scalar_exact(g);
      d /= g;
    }
    den_ = IntPoly(std::move(d));
    return;
  }
  IntPoly g = IntPoly::gcd(num_, den_);
  if (!g.is_one() && !g.is_zero()) {
    num_ = divide_via_gcd(num_, g);
    den_ = divide_via_gcd(den_, g);
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

// exact division where den is known to divide num (gcd step); content-safe
IntPoly Scalar::divide_via_gcd(const IntPoly& num, const IntPoly& g) {
  BigInt cn = num.content(), cg = g.content();
  IntPoly q = IntPoly::divide_exact(num.primitive_part(), g.primitive_part());
  if (!BigInt(cn % cg).is_zero()) throw error("gcd content mismatch");
  return q.mul_scalar(cn / cg);
}

bool Scalar::is_one() const { return num_.is_one() && den_.is_one(); }

bool Scalar::is_integer() const { return den_.is_one() && num_.degree() <= 0; }

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.num_ = -r.num_;
  return r;
}

static void check_fields(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field()) throw error("scalar field mismatch");
}

Scalar Scalar::operator+(const Scalar& r) const {
  check_fields(*this, r);
  return from_poly(field_, num_ * r.den_ + r.num_ * den_, den_ * r.den_);
}

Scalar Scalar::operator-(const Scalar& r) const { return *this + (-r); }

Scalar Scalar::operator*(const Scalar& r) const {
  check_fields(*this, r);
  return from_poly(field_, num_ * r.num_, den_ * r.den_);
}

Scalar Scalar::operator/(const Scalar& r) const {
  check_fields(*this, r);
  if (r.is_zero()) throw error("scalar division by zero");
  return from_poly(field_, num_ * r.den_, den_ * r.num_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw error("scalar division by zero");
  return from_poly(field_, den_, num_);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = one(field_);
  Scalar base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& r) const {
  return field_ == r.field_ && num_ == r.num_ && den_ == r.den_;
}

bool Scalar::operator<(const Scalar& r) const {
  if (field_.kind != r.field_.kind) return field_.kind < r.field_.kind;
  if (field_.n != r.field_.n) return field_.n < r.field_.n;
  if (num_ != r.num_) return num_ < r.num_;
  return den_ < r.den_;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  std::string n = num_.to_string();
  if (den_.is_one()) return n;
  std::string d = den_.to_string();
  auto multi = [](const std::string& s) {
    for (size_t i = 1; i < s.size(); ++i)
      if (s[i] == '+' || s[i] == '-') return true;
    return false;
  };
  if (multi(n)) n = "(" + n + ")";
  if (multi(d) || d.find('*') != std::string::npos || d.find('^') != std::string::npos)
    d = "(" + d + ")";
  return n + "/" + d;
}

namespace {

struct ScalarParser {
  ScalarField field;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  Scalar parse_expr() {
    Scalar v = eat('-') ? -parse_term() : parse_term();
    for (;;) {
      if (eat('+')) v += parse_term();
      else if (eat('-')) v -= parse_term();
      else return v;
    }
  }

  Scalar parse_term() {
    Scalar v = parse_factor();
    for (;;) {
      if (eat('*')) v *= parse_factor();
      else if (eat('/')) v /= parse_factor();
      else return v;
    }
  }

  Scalar parse_factor() {
    if (eat('-')) return -parse_factor();
    Scalar v = parse_atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = parse_int();
      v = v.pow(neg ? -e : e);
    }
    return v;
  }

  long parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw error("expected integer in scalar at offset " + std::to_string(pos));
    return std::stol(text.substr(start, pos - start));
  }

  Scalar parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Scalar v = parse_expr();
      if (!eat(')')) throw error("missing ')' in scalar: " + text);
      return v;
    }
    if (c == 'q') {
      ++pos;
      return Scalar::q(field);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Scalar::integer(field, parse_int());
    throw error("unexpected character '" + std::string(1, c) + "' in scalar: " + text);
  }
};

}  // namespace

Scalar Scalar::parse(ScalarField f, const std::string& text) {
  ScalarParser p{f, text};
  Scalar v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw error("trailing characters in scalar: " + text);
  return v;
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op) {
  switch (op) {
    case ScalarOp::add: return a + b;
    case ScalarOp::sub: return a - b;
    case ScalarOp::mul: return a * b;
    case ScalarOp::div: return a / b;
  }
  throw error("bad scalar op");
}

Scalar q_int(unsigned m, const Scalar& base) {
  Scalar acc = Scalar::zero(base.field());
  Scalar p = Scalar::one(base.field());
  for (unsigned k = 0; k < m; ++k) {
    acc += p;
    p *= base;
  }
  return acc;
}

Scalar q_factorial(unsigned m, const Scalar& base) {
  Scalar acc = Scalar::one(base.field());
  for (unsigned k = 1; k <= m; ++k) acc *= q_int(k, base);
  return acc;
}

Scalar q_binomial(unsigned m, unsigned r, const Scalar& base) {
  if (r > m) return Scalar::zero(base.field());
  // Pascal recursion row by row: B(k, j) = B(k-1, j-1) + base^j * B(k-1, j)
  std::vector<Scalar> row{Scalar::one(base.field())};
  for (unsigned k = 1; k <= m; ++k) {
    std::vector<Scalar> next(k + 1, Scalar::zero(base.field()));
    Scalar bp = Scalar::one(base.field());
    for (unsigned j = 0; j <= k; ++j) {
      next[j] = (j > 0 ? row[j - 1] : Scalar::zero(base.field())) +
                bp * (j < k ? row[j] : Scalar::zero(base.field()));
      bp *= base;
    }
    row = std::move(next);
  }
  return row[r];
}

}  // namespace qdiff
