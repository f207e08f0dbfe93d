#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hkcob {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

Integer factorial(long n);
/// Generalized binomial n(n-1)...(n-k+1)/k!; 0 for k < 0. Negative n is allowed.
Integer binomial(long n, long k);

/// 1/n! with the convention 1/n! = 0 for n < 0.
Rational inverse_factorial(long n);

/// p/q in lowest terms. Prefer this to Rational(p, q), which GMP does not canonicalize.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational sign_power(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

/// Dense polynomial in a formal parameter y with exact coefficients.
class YPolynomial {
public:
  YPolynomial() = default;
  YPolynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  explicit YPolynomial(std::vector<Rational> coefficients);

  static YPolynomial y();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational operator[](int i) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational evaluate(const Rational& y) const;

  YPolynomial& operator+=(const YPolynomial& other);
  YPolynomial& operator-=(const YPolynomial& other);
  YPolynomial& operator*=(const YPolynomial& other);
  YPolynomial& operator*=(const Rational& scalar);

  friend YPolynomial operator+(YPolynomial a, const YPolynomial& b) { return a += b; }
  friend YPolynomial operator-(YPolynomial a, const YPolynomial& b) { return a -= b; }
  friend YPolynomial operator*(YPolynomial a, const YPolynomial& b) { return a *= b; }
  friend YPolynomial operator*(YPolynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const YPolynomial& a, const YPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace hkcob
