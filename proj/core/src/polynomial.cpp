#include "traintrack/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "traintrack/graph.hpp"

namespace traintrack {

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPolynomial& p) {
  RatPoly out;
  for (const auto& c : p.coeffs()) out.emplace_back(c);
  return out;
}

// Remainder of a by b over Q.
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const Rational q = a.back() / b.back();
    for (int i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

IntPolynomial primitive(const RatPoly& p) {
  if (p.empty()) return {};
  BigInt den = 1;
  for (const auto& c : p) den = boost::multiprecision::lcm(den, denominator(c));
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& c : p) {
    out.push_back(numerator(c) * (den / denominator(c)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (out.back() < 0) g = -g;
  for (auto& c : out) c /= g;
  return IntPolynomial(std::move(out));
}

Rational eval_rat(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<RatPoly> sturm_chain(const IntPolynomial& p) {
  std::vector<RatPoly> chain{to_rat(p), to_rat(p.derivative())};
  while (!chain.back().empty()) {
    RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<RatPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const Rational v = eval_rat(q, x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Integer bound exceeding the modulus of every root.
Rational cauchy_bound(const IntPolynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = Rational(abs(p.coeff(i))) / Rational(abs(p.leading()));
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs) {
  for (long long c : coeffs) c_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::monomial(int degree, BigInt c) {
  std::vector<BigInt> v(degree + 1, 0);
  v[degree] = std::move(c);
  return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[i];
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<BigInt> out;
  for (int i = 1; i <= degree(); ++i) out.push_back(c_[i] * i);
  return IntPolynomial(std::move(out));
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

std::complex<long double> IntPolynomial::eval(std::complex<long double> x) const {
  std::complex<long double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<long double>();
  return acc;
}

int IntPolynomial::sign_at(const Rational& x) const {
  const Rational v = eval(x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    BigInt c = c_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::vector<std::string> IntPolynomial::coefficient_strings() const {
  std::vector<std::string> out;
  for (const auto& c : c_) out.push_back(c.str());
  return out;
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return IntPolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigInt> rem = a.coeffs();
  std::vector<BigInt> q(a.degree() - b.degree() + 1, 0);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const BigInt& top = rem[k + b.degree()];
    if (top % b.leading() != 0) return std::nullopt;
    q[k] = top / b.leading();
    for (int i = 0; i <= b.degree(); ++i) rem[k + i] -= q[k] * b.coeff(i);
  }
  for (const auto& c : rem) {
    if (c != 0) return std::nullopt;
  }
  return IntPolynomial(std::move(q));
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  RatPoly x = to_rat(a), y = to_rat(b);
  while (!y.empty()) {
    RatPoly r = rat_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return primitive(x);
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() < 1) return p;
  const IntPolynomial g = poly_gcd(p, p.derivative());
  // p / g over Q, then made primitive.
  RatPoly num = to_rat(p);
  const RatPoly den = to_rat(g);
  RatPoly q(num.size() - den.size() + 1, 0);
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    q[k] = num[k + den.size() - 1] / den.back();
    for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= q[k] * den[i];
  }
  return primitive(q);
}

IntPolynomial strip_zero_roots(const IntPolynomial& p) {
  std::vector<BigInt> c = p.coeffs();
  std::size_t k = 0;
  while (k < c.size() && c[k] == 0) ++k;
  return IntPolynomial(std::vector<BigInt>(c.begin() + static_cast<std::ptrdiff_t>(k), c.end()));
}

double RootInterval::midpoint() const {
  return static_cast<double>(((lo + hi) / 2).convert_to<long double>());
}

int count_real_roots(const IntPolynomial& p, const Rational& a, const Rational& b) {
  if (p.degree() < 1) return 0;
  const auto chain = sturm_chain(squarefree_part(p));
  return sign_changes(chain, a) - sign_changes(chain, b);
}

std::optional<RootInterval> largest_real_root(const IntPolynomial& p, const Rational& width) {
  if (p.degree() < 1) return std::nullopt;
  const IntPolynomial q = squarefree_part(p);
  const auto chain = sturm_chain(q);
  const Rational bound = cauchy_bound(q);
  const int at_top = sign_changes(chain, bound);
  Rational lo = -bound, hi = bound;
  if (sign_changes(chain, lo) - at_top == 0) return std::nullopt;
  // Invariant: a root in (lo, hi], none in (hi, bound].
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    if (sign_changes(chain, mid) - at_top > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (q.sign_at(hi) == 0) lo = hi;
  return RootInterval{lo, hi};
}

std::vector<std::complex<long double>> complex_roots(const IntPolynomial& p) {
  using C = std::complex<long double>;
  const IntPolynomial q = squarefree_part(p);
  const int n = q.degree();
  if (n < 1) return {};
  const IntPolynomial dq = q.derivative();
  const long double radius = cauchy_bound(q).convert_to<long double>();
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) {
    const long double angle = 2.0L * 3.14159265358979323846L * (k + 0.25L) / n;
    z[k] = std::polar(radius * 0.5L + 0.1L, angle);
  }
  // Aberth-Ehrlich iteration.
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      const C pv = q.eval(z[k]);
      const C dv = dq.eval(z[k]);
      if (std::abs(pv) == 0) continue;
      const C ratio = pv / dv;
      C sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      const C step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-18L) break;
  }
  for (auto& r : z) {
    for (int i = 0; i < 5; ++i) {
      const C dv = dq.eval(r);
      if (std::abs(dv) == 0) break;
      r -= q.eval(r) / dv;
    }
    if (std::abs(r.imag()) < 1e-15L) r = C(r.real(), 0);
  }
  std::sort(z.begin(), z.end(), [](const C& a, const C& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

}  // namespace traintrack
