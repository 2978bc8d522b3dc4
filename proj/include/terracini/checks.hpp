#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "terracini/elimination.hpp"
#include "terracini/searchlab.hpp"
#include "terracini/series.hpp"
#include "terracini/terracini.hpp"

namespace terracini {

/// A x phi for a parametrised curve; the image is projectively equivalent.
inline Curve transform_parametric(const Curve& c, const Matrix& a) {
  const auto& coords = c.as<ParametricRational>().coords;
  std::vector<Polynomial> out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) out[i] += coords[j] * Polynomial::constant(a(i, j));
  return make_parametric(std::move(out), c.id());
}

/// Solves a v = p; p must be in the image of the invertible a.
inline std::vector<Rational> solve_linear(const Matrix& a, const std::vector<Rational>& p) {
  const std::size_t n = a.rows();
  Matrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = p[i];
  }
  const Matrix red = rref(m).reduced;
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = red(i, n);
  return v;
}

/// Rank of 2S must not depend on the local parameter (Chart::Alternate) nor
/// on a projective change of coordinates. Parametric and plane curves.
inline ProbeResult invariance_probe(const Curve& curve, std::size_t x, std::size_t trials, std::uint64_t seed) {
  ProbeResult out;
  const auto sys = LinearSystem::hyperplane();
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    const Divisor d = Divisor::reduced(draw_points(curve, x, s)).doubled();
    const std::size_t base = rank(jet_matrix(curve, sys, d));
    const std::size_t alt = rank(jet_matrix(curve, sys, d, Chart::Alternate));
    Rng rng(s);
    const Matrix a = random_invertible(curve.ambient() + 1, rng);
    std::size_t moved = 0;
    if (curve.is<ParametricRational>()) {
      moved = rank(jet_matrix(transform_parametric(curve, a), sys, d));
    } else {
      // G(v) = F(a v) vanishes at a^-1 p
      const Curve g = make_plane(change_coordinates(curve.as<PlaneImplicit>().form, a), curve.id());
      std::vector<Divisor::Entry> entries;
      for (const auto& e : d.entries())
        entries.push_back({plane_point(solve_linear(a, std::get<PlanePoint>(e.point.where).p.coords())), e.multiplicity});
      moved = rank(jet_matrix(g, sys, Divisor(entries)));
    }
    ++out.trials;
    if (alt != base || moved != base) {
      ++out.failures;
      out.failing_seeds.push_back(s);
      out.witnesses.push_back(d);
      out.notes.push_back("ranks " + std::to_string(base) + "/" + std::to_string(alt) + "/" + std::to_string(moved));
    }
  }
  return out;
}

/// Random F(u, t) of degree <= 3 with F(u0, 0) = 0 and F_u(u0, 0) != 0,
/// lifted to precision n; failures are lifts with a nonzero residual or a
/// prefix that changes when the precision is raised.
inline ProbeResult implicit_lift_probe(std::size_t trials, std::uint64_t seed, std::size_t n = 12) {
  ProbeResult out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    Rng rng(s);
    const Rational u0 = rng.rational(5, 3);
    MultiPoly f(2);
    for (unsigned a = 0; a <= 3; ++a)
      for (unsigned b = 0; a + b <= 3; ++b) f.add_term({a, b}, rng.rational(9, 4));
    f.add_term({0, 0}, -f.evaluate({u0, 0}));
    if (f.partial(0).evaluate({u0, 0}) == 0) {
      f.add_term({1, 0}, 1);
      f.add_term({0, 0}, -u0);
    }
    ++out.trials;
    const Series u = implicit_lift(f, u0, n);
    const Series longer = implicit_lift(f, u0, 2 * n);
    if (!evaluate_bivariate(f, u).is_zero() || !(longer.truncated(n) == u)) {
      ++out.failures;
      out.failing_seeds.push_back(s);
      out.witnesses.emplace_back();
      out.notes.push_back("lift failed for u0 = " + to_string(u0));
    }
  }
  return out;
}

}  // namespace terracini
