#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "terracini/error.hpp"
#include "terracini/multipoly.hpp"
#include "terracini/polynomial.hpp"
#include "terracini/rational.hpp"

namespace terracini {

/// Truncated power series a_0 + a_1 t + ... + a_{N-1} t^{N-1} (mod t^N).
/// Binary operations truncate to the smaller precision of the operands.
class Series {
 public:
  explicit Series(std::size_t precision) : c_(precision) {
    if (precision == 0) throw Error(ErrorKind::InvalidInput, "series precision must be at least 1");
  }
  Series(std::vector<Rational> coeffs, std::size_t precision) : c_(precision) {
    if (precision == 0) throw Error(ErrorKind::InvalidInput, "series precision must be at least 1");
    for (std::size_t i = 0; i < std::min(precision, coeffs.size()); ++i) c_[i] = coeffs[i];
  }

  static Series constant(const Rational& v, std::size_t precision) {
    Series s(precision);
    s.c_[0] = v;
    return s;
  }
  /// The local parameter t itself.
  static Series variable(std::size_t precision) {
    Series s(precision);
    if (precision > 1) s.c_[1] = 1;
    return s;
  }
  static Series from_polynomial(const Polynomial& p, std::size_t precision) {
    return Series(p.coefficients(), precision);
  }

  [[nodiscard]] std::size_t precision() const noexcept { return c_.size(); }
  [[nodiscard]] const std::vector<Rational>& coefficients() const noexcept { return c_; }
  [[nodiscard]] const Rational& operator[](std::size_t i) const { return c_.at(i); }
  Rational& operator[](std::size_t i) { return c_.at(i); }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
  }
  /// Order of vanishing; precision() when the series is zero to full precision.
  [[nodiscard]] std::size_t valuation() const {
    std::size_t i = 0;
    while (i < c_.size() && c_[i] == 0) ++i;
    return i;
  }

  [[nodiscard]] Series truncated(std::size_t precision) const {
    return Series(c_, std::min(precision, c_.size()));
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series out(std::min(a.precision(), b.precision()));
    for (std::size_t i = 0; i < out.precision(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
    return out;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series out(std::min(a.precision(), b.precision()));
    for (std::size_t i = 0; i < out.precision(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
    return out;
  }
  friend Series operator*(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.precision(), b.precision());
    Series out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }
  friend Series operator*(Series a, const Rational& s) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  /// Multiplicative inverse; requires a nonzero constant term.
  [[nodiscard]] Series inverse() const {
    if (c_[0] == 0) throw Error(ErrorKind::NonUnit, "series with zero constant term is not invertible");
    const std::size_t n = precision();
    Series out(n);
    const Rational inv0 = 1 / c_[0];
    out.c_[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
      Rational acc = 0;
      for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
      out.c_[k] = -acc * inv0;
    }
    return out;
  }

  [[nodiscard]] Series pow(unsigned e) const {
    Series result = constant(1, precision()), base = *this;
    while (e) {
      if (e & 1U) result = result * base;
      base = base * base;
      e >>= 1U;
    }
    return result;
  }

 private:
  std::vector<Rational> c_;
};

/// p(u(t)) mod t^N.
inline Series compose(const Polynomial& p, const Series& u) {
  Series acc(u.precision());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + Series::constant(*it, u.precision());
  return acc;
}

/// s(u(t)) for a series s; requires u(0) = 0 so the composition is well defined mod t^N.
inline Series compose(const Series& s, const Series& u) {
  if (u[0] != 0) throw Error(ErrorKind::InvalidInput, "inner series must vanish at t = 0");
  const std::size_t n = std::min(s.precision(), u.precision());
  Series acc(n);
  for (std::size_t i = n; i-- > 0;) acc = acc * u.truncated(n) + Series::constant(s[i], n);
  return acc;
}

/// F(u(t), t) for a bivariate F with variable 0 = u and variable 1 = t.
inline Series evaluate_bivariate(const MultiPoly& f, const Series& u) {
  if (f.nvars() != 2) throw Error(ErrorKind::DimensionMismatch, "expected a bivariate polynomial in (u, t)");
  const std::size_t n = u.precision();
  const int du = std::max(f.degree_in(0), 0);
  // coefficient series c_i(t) with F = sum_i c_i(t) u^i
  std::vector<Series> coeffs(static_cast<std::size_t>(du) + 1, Series(n));
  for (const auto& [e, c] : f.terms()) {
    if (e[1] < n) coeffs[e[0]][e[1]] += c;
  }
  Series acc(n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

/// Solves F(u(t), t) = 0 mod t^N with u(0) = u0 by Newton iteration on
/// truncated series. Throws NonRegularPoint when dF/du vanishes at (u0, 0).
inline Series implicit_lift(const MultiPoly& f, const Rational& u0, std::size_t precision) {
  if (f.nvars() != 2) throw Error(ErrorKind::DimensionMismatch, "implicit_lift expects F(u, t)");
  if (f.evaluate({u0, 0}) != 0) throw Error(ErrorKind::InvalidInput, "F(u0, 0) != 0: starting value is not on the curve");
  const MultiPoly fu = f.partial(0);
  if (fu.evaluate({u0, 0}) == 0) throw Error(ErrorKind::NonRegularPoint, "dF/du vanishes at (u0, 0)");
  Series u = Series::constant(u0, precision);
  // each step doubles the number of correct coefficients
  std::size_t correct = 1;
  while (correct < precision) {
    correct = std::min(precision, 2 * correct);
    const Series residual = evaluate_bivariate(f, u);
    const Series slope = evaluate_bivariate(fu, u);
    u = u - residual * slope.inverse();
  }
  if (!evaluate_bivariate(f, u).is_zero())
    throw Error(ErrorKind::SelfVerificationFailed, "Newton lift left a nonzero residual");
  return u;
}

}  // namespace terracini
