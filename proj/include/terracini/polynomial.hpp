#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "terracini/error.hpp"
#include "terracini/matrix.hpp"
#include "terracini/rational.hpp"

namespace terracini {

/// Univariate polynomial over Q, coefficients stored lowest degree first.
/// The highest stored coefficient is nonzero; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Rational& v) { return Polynomial(std::vector<Rational>{v}); }
  static Polynomial monomial(const Rational& coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }
  /// t - root
  static Polynomial linear_root(const Rational& root) { return Polynomial{-root, 1}; }

  static Polynomial from_roots(const std::vector<Rational>& roots) {
    Polynomial p = constant(1);
    for (const auto& r : roots) p *= linear_root(r);
    return p;
  }

  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const noexcept { return c_; }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  [[nodiscard]] Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  [[nodiscard]] Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
  }

  /// p(t + shift), i.e. the Taylor coefficients of p at `shift`.
  [[nodiscard]] Polynomial shifted(const Rational& shift) const {
    std::vector<Rational> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] += shift * a[j];
    return Polynomial(std::move(a));
  }

  /// t^n p(1/t) for n >= degree.
  [[nodiscard]] Polynomial reversed(std::size_t n) const {
    std::vector<Rational> a(n + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) a[n - i] = c_[i];
    return Polynomial(std::move(a));
  }

  /// p(q(t)).
  [[nodiscard]] Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  [[nodiscard]] Polynomial monic() const {
    if (is_zero()) return {};
    Polynomial out = *this;
    const Rational inv = 1 / leading();
    for (auto& v : out.c_) v *= inv;
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  [[nodiscard]] Polynomial pow(unsigned e) const {
    Polynomial result = constant(1), base = *this;
    while (e) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Euclidean division; throws ZeroPolynomial on division by zero.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational q = rem[static_cast<std::size_t>(i)] * inv;
    quot[static_cast<std::size_t>(i - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.coefficients()[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const Polynomial& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Multiplicity of `root` as a zero of p (p must be nonzero).
inline int root_multiplicity(Polynomial p, const Rational& root) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root multiplicity of the zero polynomial");
  int m = 0;
  const Polynomial lin = Polynomial::linear_root(root);
  while (true) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) return m;
    p = std::move(q);
    ++m;
  }
}

/// Sylvester matrix of p (degree m) and q (degree n): n rows of p's
/// coefficients followed by m rows of q's, highest degree first.
inline Matrix sylvester_matrix(const Polynomial& p, const Polynomial& q) {
  const auto m = static_cast<std::size_t>(p.degree());
  const auto n = static_cast<std::size_t>(q.degree());
  Matrix s(m + n, m + n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s(i, i + j) = p.coeff(m - j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s(n + i, i + j) = q.coeff(n - j);
  return s;
}

/// Res(p, q) = det of the Sylvester matrix = lc(p)^deg(q) * prod q(alpha) over
/// the roots alpha of p. Zero iff p and q share a root over the closure.
inline Rational resultant(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "resultant with a zero polynomial");
  if (p.degree() == 0 && q.degree() == 0) return 1;
  return determinant(sylvester_matrix(p, q));
}

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
inline Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::DimensionMismatch, "interpolation data lengths differ");
  Polynomial result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] == 0) continue;
    Polynomial basis = Polynomial::constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis *= Polynomial::linear_root(xs[j]);
      denom *= xs[i] - xs[j];
    }
    result += basis * Rational(ys[i] / denom);
  }
  return result;
}

inline std::string to_string(const Polynomial& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1 && i > 0;
    if (!unit) out += to_string(mag);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace terracini
