#include "traintrack/spectral.hpp"

#include <bit>
#include <cmath>

#include "traintrack/graph.hpp"

namespace traintrack {

IntegerMatrix::IntegerMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

IntegerMatrix IntegerMatrix::identity(int n) {
  IntegerMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntegerMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n_; ++i) {
    if (static_cast<int>(rows[i].size()) != m.n_) throw StructuralError("matrix is not square");
    for (int j = 0; j < m.n_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::companion(const IntPolynomial& p) {
  if (!p.is_monic() || p.degree() < 1) throw StructuralError("companion matrix needs a monic polynomial");
  const int n = p.degree();
  IntegerMatrix m(n);
  for (int i = 1; i < n; ++i) m.at(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) m.at(i, n - 1) = -p.coeff(i);
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

BigInt IntegerMatrix::trace() const {
  BigInt t = 0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

bool IntegerMatrix::is_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x >= 0; });
}

bool IntegerMatrix::is_positive() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x > 0; });
}

bool IntegerMatrix::is_permutation() const {
  for (int i = 0; i < n_; ++i) {
    int row = 0, col = 0;
    for (int j = 0; j < n_; ++j) {
      if (at(i, j) != 0 && at(i, j) != 1) return false;
      row += at(i, j) == 1;
      col += at(j, i) == 1;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

std::vector<std::vector<long long>> IntegerMatrix::to_rows() const {
  std::vector<std::vector<long long>> out(n_, std::vector<long long>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out[i][j] = at(i, j).convert_to<long long>();
  }
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.n_ != b.n_) throw StructuralError("matrix size mismatch");
  IntegerMatrix c(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    for (int k = 0; k < a.n_; ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < a.n_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return c;
}

IntegerMatrix matrix_power(const IntegerMatrix& m, int k) {
  if (k < 0) throw StructuralError("negative matrix power");
  IntegerMatrix out = IntegerMatrix::identity(m.size());
  IntegerMatrix base = m;
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

IntegerMatrix transition_matrix(const GraphMap& g) {
  if (!g.is_self_map()) throw StructuralError("transition matrix of a map that is not a self-map");
  const int n = g.source().edge_count();
  IntegerMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (Dir d : g.edge_image(i).dirs) m.at(i, d.edge()) += 1;
  }
  return m;
}

IntPolynomial char_poly(const IntegerMatrix& a) {
  // Faddeev-LeVerrier; every division below is exact.
  const int n = a.size();
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  IntegerMatrix m(n);
  for (int k = 1; k <= n; ++k) {
    IntegerMatrix next = a * m;
    for (int i = 0; i < n; ++i) next.at(i, i) += c[n - k + 1];
    m = std::move(next);
    c[n - k] = -(a * m).trace() / k;
  }
  return IntPolynomial(std::move(c));
}

namespace {

std::vector<std::vector<bool>> support(const IntegerMatrix& m) {
  std::vector<std::vector<bool>> s(m.size(), std::vector<bool>(m.size()));
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) s[i][j] = m.at(i, j) != 0;
  }
  return s;
}

std::vector<std::vector<bool>> bool_mul(const std::vector<std::vector<bool>>& a,
                                        const std::vector<std::vector<bool>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j]) c[i][j] = true;
      }
    }
  }
  return c;
}

}  // namespace

bool is_irreducible(const IntegerMatrix& m) {
  const int n = m.size();
  if (n == 0) return false;
  auto reach_all = [&](bool transposed) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        const bool edge = transposed ? m.at(j, i) != 0 : m.at(i, j) != 0;
        if (edge && !seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach_all(false) && reach_all(true);
}

std::optional<int> primitivity_exponent(const IntegerMatrix& m) {
  const int n = m.size();
  if (n == 0) return std::nullopt;
  const auto s = support(m);
  auto p = s;
  const int bound = (n - 1) * (n - 1) + 1;
  for (int k = 1; k <= bound; ++k) {
    bool positive = true;
    for (const auto& row : p) {
      for (bool b : row) positive = positive && b;
    }
    if (positive) return k;
    p = bool_mul(p, s);
  }
  return std::nullopt;
}

Rational decimal_width(int k) {
  Rational w = 1;
  for (int i = 0; i < k; ++i) w /= 10;
  return w;
}

PerronVerdict is_perron_number(const IntPolynomial& p) {
  PerronVerdict v;
  const auto root = largest_real_root(p, decimal_width(12));
  if (!root || root->hi <= 0) throw DomainError("polynomial has no positive real root");
  v.root = *root;
  v.roots = complex_roots(p);
  const long double lambda = root->midpoint();
  std::size_t self = 0;
  for (std::size_t i = 1; i < v.roots.size(); ++i) {
    if (std::abs(v.roots[i] - lambda) < std::abs(v.roots[self] - lambda)) self = i;
  }
  long double other = 0;
  for (std::size_t i = 0; i < v.roots.size(); ++i) {
    if (i != self) other = std::max(other, std::abs(v.roots[i]));
  }
  v.gap = lambda - other;
  v.perron = v.gap > 1e-6L;
  v.weak_perron = v.gap > -1e-9L;
  return v;
}

IntPolynomial minimal_polynomial_of_largest_root(const IntPolynomial& p) {
  using C = std::complex<long double>;
  const IntPolynomial q = squarefree_part(p);
  const auto root = largest_real_root(q, decimal_width(12));
  if (!root) throw DomainError("polynomial has no real root");
  const auto roots = complex_roots(q);
  const long double lambda = root->midpoint();
  std::size_t self = 0;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (std::abs(roots[i] - lambda) < std::abs(roots[self] - lambda)) self = i;
  }
  std::vector<C> others;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i != self) others.push_back(roots[i]);
  }
  const int m = static_cast<int>(others.size());
  const bool lambda_is_exact = root->lo == root->hi;

  for (int size = 0; size <= m; ++size) {
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != size) continue;
      std::vector<C> poly{C(1)};
      auto mul_root = [&](C r) {
        std::vector<C> next(poly.size() + 1, C(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
          next[i + 1] += poly[i];
          next[i] -= r * poly[i];
        }
        poly = std::move(next);
      };
      mul_root(C(lambda));
      for (int i = 0; i < m; ++i) {
        if (mask & (1u << i)) mul_root(others[i]);
      }
      std::vector<BigInt> coeffs;
      bool ok = true;
      for (const auto& c : poly) {
        const long double r = std::round(c.real());
        if (std::abs(c.imag()) > 1e-6L || std::abs(c.real() - r) > 1e-6L) {
          ok = false;
          break;
        }
        coeffs.emplace_back(static_cast<long long>(r));
      }
      if (!ok) continue;
      const IntPolynomial cand(std::move(coeffs));
      if (!exact_divide(q, cand)) continue;
      const bool has_lambda =
          lambda_is_exact ? cand.sign_at(root->lo) == 0 : count_real_roots(cand, root->lo, root->hi) > 0;
      if (has_lambda) return cand;
    }
  }
  return q;
}

bool trace_obstruction(const IntPolynomial& p, int n) {
  if (p.degree() != n) throw StructuralError("trace obstruction: degree does not match the dimension");
  return -p.coeff(n - 1) < 0;
}

const std::vector<PerronTableEntry>& minimal_perron_table() {
  static const std::vector<PerronTableEntry> table = [] {
    std::vector<PerronTableEntry> t = {
        {2, IntPolynomial{-1, -1, 1}, 1.618, {}},
        {3, IntPolynomial{-1, -1, 0, 1}, 1.325, {}},
        {4, IntPolynomial{-1, -1, 0, 0, 1}, 1.221, {}},
        {5, IntPolynomial{-1, -1, -1, 0, 1, 1}, 1.124, {}},
        {5, IntPolynomial{-1, -1, 0, 0, 0, 1}, 1.167, {}},
    };
    for (auto& e : t) {
      const auto v = is_perron_number(e.polynomial);
      if (!v.perron || std::abs(v.root.midpoint() - e.approx) > 1e-3) {
        throw DomainError("Perron table entry failed verification: " + e.polynomial.to_string());
      }
      if (minimal_polynomial_of_largest_root(e.polynomial) != e.polynomial) {
        throw DomainError("Perron table entry is not irreducible: " + e.polynomial.to_string());
      }
      e.root = v.root;
    }
    return t;
  }();
  return table;
}

SpectralReport classify_matrix(const IntegerMatrix& m) {
  if (!m.is_nonnegative()) throw StructuralError("transition matrix has a negative entry");
  SpectralReport r;
  r.matrix = m;
  r.char_poly = char_poly(m);
  r.trace = m.trace();
  r.irreducible = is_irreducible(m);
  r.primitivity_exponent = primitivity_exponent(m);
  r.primitive = r.primitivity_exponent.has_value();
  r.pf = r.primitive;
  r.dominant_root = largest_real_root(r.char_poly, decimal_width(12));
  if (r.dominant_root && r.dominant_root->hi > 0) {
    r.minimal_polynomial = minimal_polynomial_of_largest_root(r.char_poly);
    if (r.dominant_root->lo > 1) {
      const auto v = is_perron_number(r.minimal_polynomial);
      r.perron = v.perron;
      r.weak_perron = v.weak_perron;
    }
  }
  return r;
}

}  // namespace traintrack
