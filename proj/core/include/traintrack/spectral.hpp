#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "traintrack/graph_map.hpp"
#include "traintrack/polynomial.hpp"

namespace traintrack {

/// Square matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  explicit IntegerMatrix(int n);
  static IntegerMatrix identity(int n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  /// Companion matrix of a monic polynomial.
  static IntegerMatrix companion(const IntPolynomial& p);

  int size() const { return n_; }
  BigInt& at(int i, int j) { return a_.at(static_cast<std::size_t>(i * n_ + j)); }
  const BigInt& at(int i, int j) const { return a_.at(static_cast<std::size_t>(i * n_ + j)); }

  IntegerMatrix transpose() const;
  BigInt trace() const;
  bool is_nonnegative() const;
  bool is_positive() const;
  bool is_permutation() const;
  std::vector<std::vector<long long>> to_rows() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  bool operator==(const IntegerMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<BigInt> a_;
};

IntegerMatrix matrix_power(const IntegerMatrix& m, int k);

/// Row i, column j counts occurrences of edge j (either orientation) in the
/// image of edge i.
IntegerMatrix transition_matrix(const GraphMap& g);

/// det(xI - M), exact.
IntPolynomial char_poly(const IntegerMatrix& m);

/// Strong connectivity of the support digraph.
bool is_irreducible(const IntegerMatrix& m);
/// Least k <= (n-1)^2 + 1 with M^k strictly positive.
std::optional<int> primitivity_exponent(const IntegerMatrix& m);

struct PerronVerdict {
  bool perron = false;
  bool weak_perron = false;
  RootInterval root;
  /// Dominant root minus the largest modulus of any other root.
  long double gap = 0;
  std::vector<std::complex<long double>> roots;
};

/// Strict Perron test on the distinct roots of p. Gaps at or below 1e-6 are
/// reported as ties (not Perron).
PerronVerdict is_perron_number(const IntPolynomial& p);

/// The irreducible factor of p having p's largest real root as a root.
IntPolynomial minimal_polynomial_of_largest_root(const IntPolynomial& p);

/// True when p cannot be the characteristic polynomial of an n x n
/// nonnegative matrix on trace grounds.
bool trace_obstruction(const IntPolynomial& p, int n);

struct PerronTableEntry {
  int degree;
  IntPolynomial polynomial;
  double approx;
  RootInterval root;
};

/// Smallest Perron numbers of degrees 2 to 5 (and the second smallest of
/// degree 5), each re-verified on first use.
const std::vector<PerronTableEntry>& minimal_perron_table();

struct SpectralReport {
  IntegerMatrix matrix;
  IntPolynomial char_poly;
  bool irreducible = false;
  bool primitive = false;
  /// For nonnegative integer matrices this coincides with primitivity.
  bool pf = false;
  std::optional<int> primitivity_exponent;
  std::optional<RootInterval> dominant_root;
  bool perron = false;
  bool weak_perron = false;
  IntPolynomial minimal_polynomial;
  BigInt trace = 0;
};

/// Dominant root isolated to width 1e-12.
SpectralReport classify_matrix(const IntegerMatrix& m);

/// 10^-k as an exact rational.
Rational decimal_width(int k);

}  // namespace traintrack
