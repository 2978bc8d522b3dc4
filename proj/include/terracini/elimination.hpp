#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "terracini/error.hpp"
#include "terracini/matrix.hpp"
#include "terracini/multipoly.hpp"
#include "terracini/polynomial.hpp"
#include "terracini/random.hpp"

namespace terracini {

/// Res_y(A(x, y, 1), B(x, y, 1)) as a polynomial in x, by evaluation at
/// deg A * deg B + 1 integer abscissae and interpolation. The leading
/// coefficients of A and B in y must be nonzero constants (A(0,1,0) and
/// B(0,1,0) nonzero), so specialisation commutes with the resultant.
inline Polynomial resultant_in_y(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != 3 || b.nvars() != 3) throw Error(ErrorKind::DimensionMismatch, "expected ternary forms");
  if (a.evaluate({0, 1, 0}) == 0 || b.evaluate({0, 1, 0}) == 0)
    throw Error(ErrorKind::EliminationDegenerate, "leading coefficient in y is not constant");
  const int bound = a.total_degree() * b.total_degree();
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= bound; ++i) {
    const Rational x = i;
    xs.push_back(x);
    ys.push_back(resultant(a.restrict_to(1, {x, 0, 1}), b.restrict_to(1, {x, 0, 1})));
  }
  return interpolate(xs, ys);
}

inline MultiPoly hessian_determinant(const MultiPoly& form) {
  std::vector<std::vector<MultiPoly>> h(3, std::vector<MultiPoly>(3));
  const auto grad = form.gradient();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h[i][j] = grad[i].partial(j);
  return determinant(h, 3);
}

/// F(A v): the form pulled back along the linear map v -> A v.
inline MultiPoly change_coordinates(const MultiPoly& form, const Matrix& a) {
  const std::size_t n = form.nvars();
  std::vector<MultiPoly> subs;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly row(n);
    for (std::size_t j = 0; j < n; ++j) row += MultiPoly::variable(n, j) * a(i, j);
    subs.push_back(row);
  }
  return form.substitute(subs);
}

/// Random invertible integer matrix with entries in [-3, 3].
inline Matrix random_invertible(std::size_t n, Rng& rng) {
  while (true) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-3, 3);
    if (determinant(a) != 0) return a;
  }
}

/// Certifies that the plane curve F = 0 has no singular point: the partials
/// have no common projective zero. Uses resultants in y after random changes
/// of coordinates; a constant gcd of Res(F_x, F_y) and Res(F_x, F_z) rules out
/// affine common zeros, and the line z = 0 is checked directly. Returns false
/// only if every attempt saw a possible common zero.
inline bool certify_smooth_plane(const MultiPoly& form, std::uint64_t seed = 1, int attempts = 6) {
  if (form.total_degree() <= 1) return !form.is_zero();
  Rng rng(seed);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const Matrix a = attempt == 0 ? Matrix::identity(3) : random_invertible(3, rng);
    const MultiPoly g = change_coordinates(form, a);
    const auto grad = g.gradient();
    bool leading_ok = true;
    for (const auto& d : grad) leading_ok = leading_ok && d.evaluate({0, 1, 0}) != 0;
    if (!leading_ok) continue;
    const Polynomial r01 = resultant_in_y(grad[0], grad[1]);
    const Polynomial r02 = resultant_in_y(grad[0], grad[2]);
    if (r01.is_zero() || r02.is_zero()) return false;  // shared component => singular
    if (gcd(r01, r02).degree() > 0) continue;
    // points at infinity: (x : 1 : 0), then (1 : 0 : 0)
    Polynomial common;
    for (const auto& d : grad) common = gcd(common, d.restrict_to(0, {0, 1, 0}));
    if (common.is_zero() || common.degree() > 0) continue;
    bool all_zero_at_100 = true;
    for (const auto& d : grad) all_zero_at_100 = all_zero_at_100 && d.evaluate({1, 0, 0}) == 0;
    if (all_zero_at_100) continue;
    return true;
  }
  return false;
}

}  // namespace terracini
