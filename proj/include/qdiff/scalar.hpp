#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiff {

using BigInt = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense integer-coefficient polynomial in the deformation parameter q.
// coef[k] is the coefficient of q^k; the vector carries no trailing zeros.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(BigInt constant);
  explicit IntPoly(std::vector<BigInt> coef);

  static IntPoly variable();        // q
  static IntPoly cyclotomic(unsigned n);

  bool is_zero() const { return coef_.empty(); }
  bool is_one() const;
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const BigInt& leading() const;
  BigInt coeff(size_t k) const;
  const std::vector<BigInt>& coeffs() const { return coef_; }

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& r) const;
  IntPoly operator-(const IntPoly& r) const;
  IntPoly operator*(const IntPoly& r) const;
  bool operator==(const IntPoly& r) const { return coef_ == r.coef_; }
  bool operator!=(const IntPoly& r) const { return !(*this == r); }
  bool operator<(const IntPoly& r) const;  // degree, then coefficient order

  BigInt content() const;               // gcd of coefficients, >= 0
  IntPoly primitive_part() const;
  IntPoly mul_scalar(const BigInt& k) const;
  IntPoly div_scalar_exact(const BigInt& k) const;

  // Euclidean helpers; divide() requires the division to be exact.
  static IntPoly divide_exact(const IntPoly& num, const IntPoly& den);
  static IntPoly gcd(const IntPoly& a, const IntPoly& b);

  std::string to_string() const;

private:
  std::vector<BigInt> coef_;
  void trim();
};

enum class FieldKind : uint8_t { rationals, rational_q, cyclotomic };

struct ScalarField {
  FieldKind kind = FieldKind::rational_q;
  unsigned n = 0;  // cyclotomic order, >= 2

  static ScalarField rationals() { return {FieldKind::rationals, 0}; }
  static ScalarField rational_q() { return {FieldKind::rational_q, 0}; }
  static ScalarField cyclotomic(unsigned n);

  bool operator==(const ScalarField& r) const { return kind == r.kind && n == r.n; }
  bool operator!=(const ScalarField& r) const { return !(*this == r); }
  bool has_q() const { return kind != FieldKind::rationals; }
  const IntPoly& modulus() const;  // Phi_n, cyclotomic only
  std::string to_string() const;
  static ScalarField parse(const std::string& s);
};

// Exact field element: a reduced fraction num/den of integer polynomials in q.
//  - rationals: num, den constant, den > 0, gcd(num, den) = 1
//  - rational_q: gcd(num, den) = 1 (including content), leading(den) > 0
//  - cyclotomic(n): num reduced mod Phi_n, den a positive integer constant,
//    gcd(content(num), den) = 1
class Scalar {
public:
  Scalar() : Scalar(ScalarField::rational_q()) {}
  explicit Scalar(ScalarField f);  // zero

  static Scalar zero(ScalarField f) { return Scalar(f); }
  static Scalar one(ScalarField f);
  static Scalar integer(ScalarField f, long v);
  static Scalar fraction(ScalarField f, long num, long den);
  static Scalar q(ScalarField f);
  static Scalar q_power(ScalarField f, long e);   // q^e, e may be negative
  static Scalar from_poly(ScalarField f, IntPoly num, IntPoly den = IntPoly(BigInt(1)));

  const ScalarField& field() const { return field_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_integer() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& r) const;
  Scalar operator-(const Scalar& r) const;
  Scalar operator*(const Scalar& r) const;
  Scalar operator/(const Scalar& r) const;
  Scalar& operator+=(const Scalar& r) { return *this = *this + r; }
  Scalar& operator-=(const Scalar& r) { return *this = *this - r; }
  Scalar& operator*=(const Scalar& r) { return *this = *this * r; }
  Scalar& operator/=(const Scalar& r) { return *this = *this / r; }

  Scalar inverse() const;
  Scalar pow(long e) const;

  bool operator==(const Scalar& r) const;
  bool operator!=(const Scalar& r) const { return !(*this == r); }
  bool operator<(const Scalar& r) const;  // arbitrary but deterministic order

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  std::string to_string() const;
  static Scalar parse(ScalarField f, const std::string& text);

private:
  ScalarField field_;
  IntPoly num_, den_;
  void normalize();
  static IntPoly divide_via_gcd(const IntPoly& num, const IntPoly& g);
};

enum class ScalarOp : uint8_t { add, sub, mul, div };

Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op);

// Geometric-sum q-integer [m]_base = 1 + base + ... + base^(m-1); valid at
// every base value including base = 1 and roots of unity.
Scalar q_int(unsigned m, const Scalar& base);
Scalar q_factorial(unsigned m, const Scalar& base);
// Gaussian binomial, computed by the Pascal recursion so it stays polynomial
// in base (no division by q-integers).
Scalar q_binomial(unsigned m, unsigned r, const Scalar& base);

}  // namespace qdiff
