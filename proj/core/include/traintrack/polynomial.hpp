#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace traintrack {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long long> coeffs);
  static IntPolynomial monomial(int degree, BigInt c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  /// Zero beyond the degree.
  BigInt coeff(int i) const;
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& leading() const { return c_.back(); }

  IntPolynomial derivative() const;
  Rational eval(const Rational& x) const;
  std::complex<long double> eval(std::complex<long double> x) const;
  /// Sign of p(x) at a rational point.
  int sign_at(const Rational& x) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  bool operator==(const IntPolynomial&) const = default;

  /// "x^5 - x - 1" style.
  std::string to_string(const std::string& var = "x") const;
  /// Coefficients lowest degree first, as decimal strings.
  std::vector<std::string> coefficient_strings() const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Quotient when b divides a exactly over the integers.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b);
/// Monic-up-to-content gcd over the rationals, returned as a primitive integer
/// polynomial with positive leading coefficient.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);
/// p / gcd(p, p'), primitive with positive leading coefficient.
IntPolynomial squarefree_part(const IntPolynomial& p);
/// Strips factors of x.
IntPolynomial strip_zero_roots(const IntPolynomial& p);

/// Closed rational interval.
struct RootInterval {
  Rational lo;
  Rational hi;
  double midpoint() const;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Number of distinct real roots in (a, b].
int count_real_roots(const IntPolynomial& p, const Rational& a, const Rational& b);
/// Largest real root, isolated to width at most `width`. Empty when p has no
/// real root.
std::optional<RootInterval> largest_real_root(const IntPolynomial& p, const Rational& width);
/// Every complex root of the squarefree part, each listed once.
std::vector<std::complex<long double>> complex_roots(const IntPolynomial& p);

}  // namespace traintrack
