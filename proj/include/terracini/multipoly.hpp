#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "terracini/error.hpp"
#include "terracini/polynomial.hpp"
#include "terracini/rational.hpp"

namespace terracini {

using Exponent = std::vector<unsigned>;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms with zero coefficient are never stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& v) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), v);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t index) {
    MultiPoly p(nvars);
    Exponent e(nvars, 0);
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
  }
  /// Embeds a univariate polynomial as a polynomial in variable `index`.
  static MultiPoly from_univariate(std::size_t nvars, std::size_t index, const Polynomial& u) {
    MultiPoly p(nvars);
    for (std::size_t i = 0; i < u.coefficients().size(); ++i) {
      Exponent e(nvars, 0);
      e.at(index) = static_cast<unsigned>(i);
      p.add_term(e, u.coefficients()[i]);
    }
    return p;
  }

  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "exponent arity differs from variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  [[nodiscard]] Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// -1 for zero.
  [[nodiscard]] int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto k : e) s += static_cast<int>(k);
      d = std::max(d, s);
    }
    return d;
  }

  [[nodiscard]] int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }

  [[nodiscard]] bool is_homogeneous() const {
    int d = -2;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto k : e) s += static_cast<int>(k);
      if (d == -2) d = s;
      else if (d != s) return false;
    }
    return true;
  }

  [[nodiscard]] Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "evaluation point arity");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i]) term *= ipow(point[i], e[i]);
      acc += term;
    }
    return acc;
  }

  [[nodiscard]] MultiPoly partial(std::size_t var) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent f = e;
      --f[var];
      out.add_term(f, c * static_cast<long>(e[var]));
    }
    return out;
  }

  [[nodiscard]] std::vector<MultiPoly> gradient() const {
    std::vector<MultiPoly> g;
    for (std::size_t i = 0; i < nvars_; ++i) g.push_back(partial(i));
    return g;
  }

  /// Univariate polynomial in `var` after fixing every other variable to
  /// the value given in `values` (the entry at `var` is ignored).
  [[nodiscard]] Polynomial restrict_to(std::size_t var, const std::vector<Rational>& values) const {
    std::vector<Rational> c(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1);
    for (const auto& [e, coef] : terms_) {
      Rational term = coef;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (i != var && e[i]) term *= ipow(values[i], e[i]);
      c[e[var]] += term;
    }
    return Polynomial(std::move(c));
  }

  /// Replaces variable i by subs[i] (all in a common ring of subs[0].nvars() variables).
  [[nodiscard]] MultiPoly substitute(const std::vector<MultiPoly>& subs) const {
    if (subs.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "substitution arity");
    const std::size_t target = subs.empty() ? 0 : subs.front().nvars();
    MultiPoly out(target);
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(target, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(target, 1));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * subs[i]);
        term = term * cache[e[i]];
      }
      out += term;
    }
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, -c);
    return out;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend MultiPoly operator*(const MultiPoly& a, const Rational& s) {
    MultiPoly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, c * s);
    return out;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  [[nodiscard]] MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(nvars_, 1), base = *this;
    while (k) {
      if (k & 1U) result = result * base;
      base = base * base;
      k >>= 1U;
    }
    return result;
  }

 private:
  void check(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomials over different variable sets");
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

inline std::string to_string(const MultiPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  // highest terms first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    bool has_var = false;
    for (auto k : e) has_var = has_var || k > 0;
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string body;
    if (mag != 1 || !has_var) body = to_string(mag);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (e[i] > 1) body += "^" + std::to_string(e[i]);
    }
    out += body;
  }
  return out;
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
inline MultiPoly determinant(const std::vector<std::vector<MultiPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  MultiPoly det(nvars);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][col] * determinant(minor, nvars);
    if (col % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace terracini
