#include <gtest/gtest.h>

#include <random>

#include "test_maps.hpp"
#include "traintrack/spectral.hpp"

using namespace traintrack;
using namespace tt_test;

namespace {

// Cofactor expansion of det(xI - M) with polynomial entries.
IntPolynomial laplace_char_poly(const IntegerMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<IntPolynomial>> a(n, std::vector<IntPolynomial>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][j] = IntPolynomial(std::vector<BigInt>{-m.at(i, j)});
      if (i == j) a[i][j] = a[i][j] + IntPolynomial{0, 1};
    }
  }
  auto det = [&](auto&& self, std::vector<int> rows, std::vector<int> cols) -> IntPolynomial {
    if (rows.size() == 1) return a[rows[0]][cols[0]];
    IntPolynomial acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<int> r2(rows.begin() + 1, rows.end());
      std::vector<int> c2 = cols;
      c2.erase(c2.begin() + static_cast<std::ptrdiff_t>(k));
      const IntPolynomial term = a[rows[0]][cols[k]] * self(self, r2, c2);
      acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  };
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return det(det, idx, idx);
}

IntegerMatrix random_matrix(std::mt19937& rng, int n, int max_entry) {
  IntegerMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<int>(rng() % (max_entry + 1));
  }
  return m;
}

long double power_iteration(const IntegerMatrix& m) {
  const int n = m.size();
  std::vector<long double> v(n, 1.0L);
  long double lambda = 0;
  for (int it = 0; it < 5000; ++it) {
    std::vector<long double> w(n, 0.0L);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) w[i] += m.at(i, j).convert_to<long double>() * v[j];
    }
    long double norm = 0;
    for (auto x : w) norm = std::max(norm, x);
    for (auto& x : w) x /= norm;
    lambda = norm;
    v = w;
  }
  return lambda;
}

}  // namespace

TEST(Spectral, TransitionMatrixOfG) {
  const auto m = transition_matrix(g_map());
  const auto expected = IntegerMatrix::from_rows(
      {{0, 1, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 1, 0, 1}, {1, 0, 0, 0, 0}});
  EXPECT_EQ(m, expected);
}

TEST(Spectral, DisplayedMatrixIsTheTranspose) {
  // Columns are source edges in the printed display.
  const auto display = IntegerMatrix::from_rows(
      {{0, 0, 0, 0, 1}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 0}});
  EXPECT_EQ(transition_matrix(g_map()).transpose(), display);
}

TEST(Spectral, TransitionMatrixOfPsi) {
  EXPECT_EQ(transition_matrix(psi_map()), IntegerMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 1}}));
}

TEST(Spectral, TransitionMatrixOfIdentity) {
  EXPECT_EQ(transition_matrix(GraphMap::identity(g_graph())), IntegerMatrix::identity(5));
}

TEST(Spectral, CharPolyOfG) {
  const auto p = char_poly(transition_matrix(g_map()));
  EXPECT_EQ(p, (IntPolynomial{-1, -1, 0, 0, 0, 1}));
  EXPECT_EQ(p.to_string(), "x^5 - x - 1");
}

TEST(Spectral, CharPolyOfIdentity) {
  IntPolynomial expected{1};
  for (int i = 0; i < 4; ++i) expected = expected * IntPolynomial{-1, 1};
  EXPECT_EQ(char_poly(IntegerMatrix::identity(4)), expected);
}

TEST(Spectral, CharPolyOfCompanion) {
  const IntPolynomial p{-1, -1, -1, 0, 1, 1};
  EXPECT_EQ(char_poly(IntegerMatrix::companion(p)), p);
}

TEST(Spectral, CharPolyMatchesLaplaceOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto m = random_matrix(rng, n, 3);
    EXPECT_EQ(char_poly(m), laplace_char_poly(m));
    EXPECT_EQ(char_poly(m.transpose()), char_poly(m));
  }
}

TEST(Spectral, ClassifyG) {
  const auto r = classify_matrix(transition_matrix(g_map()));
  EXPECT_TRUE(r.irreducible);
  EXPECT_TRUE(r.primitive);
  EXPECT_TRUE(r.pf);
  ASSERT_TRUE(r.dominant_root);
  EXPECT_GE(r.dominant_root->lo, Rational(11673039, 10000000));
  EXPECT_LE(r.dominant_root->hi, Rational(11673040, 10000000));
  EXPECT_LE(r.dominant_root->width(), decimal_width(12));
  EXPECT_TRUE(r.perron);
  EXPECT_EQ(r.minimal_polynomial.degree(), 5);
  EXPECT_EQ(r.trace, 0);
}

TEST(Spectral, GSeventeenthPowerPositive) {
  const auto m = transition_matrix(g_map());
  EXPECT_TRUE(matrix_power(m, 17).is_positive());
  EXPECT_FALSE(matrix_power(m, 16).is_positive());
  EXPECT_EQ(primitivity_exponent(m), 17);
  EXPECT_TRUE(transition_matrix(power(g_map(), 17)).is_positive());
}

TEST(Spectral, PermutationMatrix) {
  const auto m = IntegerMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const auto r = classify_matrix(m);
  EXPECT_TRUE(r.irreducible);
  EXPECT_FALSE(r.primitive);
  ASSERT_TRUE(r.dominant_root);
  EXPECT_TRUE(r.dominant_root->contains(1));
}

TEST(Spectral, NegativeEntryRejected) {
  EXPECT_THROW(classify_matrix(IntegerMatrix::from_rows({{1, -1}, {0, 1}})), StructuralError);
}

TEST(Spectral, DominantRootMatchesPowerIteration) {
  std::mt19937 rng(5);
  int checked = 0;
  while (checked < 30) {
    const auto m = random_matrix(rng, 2 + static_cast<int>(rng() % 4), 2);
    if (!primitivity_exponent(m)) continue;
    const auto r = classify_matrix(m);
    ASSERT_TRUE(r.dominant_root);
    EXPECT_NEAR(r.dominant_root->midpoint(), static_cast<double>(power_iteration(m)), 1e-9);
    EXPECT_TRUE(r.weak_perron || r.dominant_root->hi <= 1);
    ++checked;
  }
}

TEST(Spectral, PrimitivityBound) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto m = random_matrix(rng, n, 1);
    const auto k = primitivity_exponent(m);
    const int bound = (n - 1) * (n - 1) + 1;
    // Oracle: direct powers up to twice the bound.
    bool any = false;
    for (int j = 1; j <= 2 * bound; ++j) any = any || matrix_power(m, j).is_positive();
    EXPECT_EQ(k.has_value(), any);
    if (k) EXPECT_TRUE(matrix_power(m, bound).is_positive());
  }
}

TEST(Perron, QuinticIsPerron) {
  const auto v = is_perron_number(IntPolynomial{-1, -1, 0, 0, 0, 1});
  EXPECT_TRUE(v.perron);
  EXPECT_NEAR(v.root.midpoint(), 1.1673, 1e-4);
}

TEST(Perron, SmallestQuinticIsPerron) {
  const auto v = is_perron_number(IntPolynomial{-1, -1, -1, 0, 1, 1});
  EXPECT_TRUE(v.perron);
  EXPECT_NEAR(v.root.midpoint(), 1.1237, 1e-4);
}

TEST(Perron, SqrtTwoIsOnlyWeak) {
  const auto v = is_perron_number(IntPolynomial{-2, 0, 1});
  EXPECT_FALSE(v.perron);
  EXPECT_TRUE(v.weak_perron);
}

TEST(Perron, NoPositiveRootRejected) {
  EXPECT_THROW(is_perron_number(IntPolynomial{1, 0, 1}), DomainError);
  EXPECT_THROW(is_perron_number(IntPolynomial{1, 1}), DomainError);
}

TEST(Perron, TraceObstruction) {
  EXPECT_TRUE(trace_obstruction(IntPolynomial{-1, -1, -1, 0, 1, 1}, 5));
  EXPECT_FALSE(trace_obstruction(IntPolynomial{-1, -1, 0, 0, 0, 1}, 5));
  EXPECT_FALSE(trace_obstruction(IntPolynomial{-1, 3, -3, 1}, 3));
  EXPECT_THROW(trace_obstruction(IntPolynomial{-1, 1}, 3), StructuralError);
}

TEST(Perron, TableAgreesWithBisection) {
  const auto& t = minimal_perron_table();
  ASSERT_EQ(t.size(), 5u);
  const double printed[] = {1.618, 1.325, 1.221, 1.124, 1.167};
  for (std::size_t i = 0; i < t.size(); ++i) {
    // Plain bisection on doubles as an independent oracle.
    double lo = 1, hi = 2;
    for (int it = 0; it < 200; ++it) {
      const double mid = (lo + hi) / 2;
      const double v = t[i].polynomial.eval(std::complex<long double>(mid)).real();
      (v > 0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(lo, printed[i], 1e-3);
    EXPECT_NEAR(t[i].root.midpoint(), lo, 1e-9);
  }
}

TEST(Polynomial, MinimalPolynomialOfReducible) {
  // (x^5 - x - 1)(x - 1) x^2
  const IntPolynomial q{-1, -1, 0, 0, 0, 1};
  const IntPolynomial p = q * IntPolynomial{-1, 1} * IntPolynomial{0, 0, 1};
  EXPECT_EQ(minimal_polynomial_of_largest_root(p), q);
  EXPECT_EQ(minimal_polynomial_of_largest_root(IntPolynomial{-2, 1} * IntPolynomial{-1, -1, 1}),
            (IntPolynomial{-2, 1}));
}

TEST(Polynomial, SquarefreePart) {
  const IntPolynomial a{-1, 1};
  const IntPolynomial b{1, 1};
  EXPECT_EQ(squarefree_part(a * a * b), a * b);
}

TEST(Polynomial, SturmCounts) {
  const IntPolynomial p = IntPolynomial{-1, 1} * IntPolynomial{-2, 1} * IntPolynomial{1, 0, 1};
  EXPECT_EQ(count_real_roots(p, -10, 10), 2);
  EXPECT_EQ(count_real_roots(p, Rational(3, 2), 10), 1);
  EXPECT_EQ(complex_roots(p).size(), 4u);
}
