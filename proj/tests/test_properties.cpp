// Seeded property checks over the exact core.
#include <gtest/gtest.h>

#include "terracini/searchlab.hpp"
#include "terracini/witness.hpp"

using namespace terracini;

namespace {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  // low-rank products show up often enough to exercise rank deficiency
  const bool low = rng.coin();
  if (low) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min(rows, cols))));
    Matrix a(rows, k), b(k, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = rng.rational(4, 3);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cols; ++j) b(i, j) = rng.rational(4, 3);
    return a * b;
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.rational(4, 3);
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Polynomial random_poly(Rng& rng, int degree) {
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.push_back(rng.rational(5, 2));
  if (c.back() == 0) c.back() = 1;
  return Polynomial(c);
}

}  // namespace

TEST(LinearAlgebraProperties, RankOfTransposeAndKernel) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng(mix_seed(17, s));
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 6));
    const Matrix m = random_matrix(rng, rows, cols);
    const std::size_t r = rank(m);
    EXPECT_EQ(r, rank(transpose(m))) << "seed " << s;
    const auto k = kernel_basis(m);
    EXPECT_EQ(k.size() + r, cols) << "seed " << s;
    for (const auto& v : k)
      for (std::size_t i = 0; i < rows; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += m(i, j) * v[j];
        EXPECT_EQ(acc, 0) << "seed " << s;
      }
  }
}

TEST(PolynomialProperties, ResultantVanishesExactlyOnCommonFactors) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng(mix_seed(23, s));
    Polynomial p = random_poly(rng, static_cast<int>(rng.uniform(1, 4)));
    Polynomial q = random_poly(rng, static_cast<int>(rng.uniform(1, 4)));
    if (rng.coin()) {
      const Polynomial common = Polynomial::linear_root(rng.rational(3, 2));
      p = p * common;
      q = q * common;
    }
    EXPECT_EQ(resultant(p, q) == 0, gcd(p, q).degree() > 0) << "seed " << s;
  }
}

TEST(PolynomialProperties, ResultantOfLinearFactorsIsAProductOfDifferences) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(mix_seed(29, s));
    std::vector<Rational> a, b;
    for (int i = 0; i < 3; ++i) a.push_back(rng.rational(6, 2));
    for (int i = 0; i < 2; ++i) b.push_back(rng.rational(6, 2));
    Rational expected = 1;
    for (const auto& x : a)
      for (const auto& y : b) expected *= x - y;
    EXPECT_EQ(resultant(Polynomial::from_roots(a), Polynomial::from_roots(b)), expected) << "seed " << s;
  }
}

TEST(ReportProperties, AddingPointsNeverLowersRank) {
  const Curve c = witness_quartic().curve;
  const auto sys = LinearSystem::hyperplane();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pts = draw_points(c, 3, mix_seed(31, s));
    const std::size_t r1 = rank(jet_matrix(c, sys, Divisor::reduced({pts[0]}).doubled()));
    const std::size_t r2 = rank(jet_matrix(c, sys, Divisor::reduced({pts[0], pts[1]}).doubled()));
    const std::size_t r3 = rank(jet_matrix(c, sys, Divisor::reduced(pts).doubled()));
    EXPECT_LE(r1, r2);
    EXPECT_LE(r2, r3);
    EXPECT_LE(r3, r2 + 2);
  }
}

TEST(ReportProperties, SchemeReportAgreesOnReducedSets) {
  const Curve c = genus3_fixture();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Divisor d = Divisor::reduced(draw_points(c, 2, mix_seed(37, s)));
    const TerraciniReport a = defect_report(c, LinearSystem::canonical(), d);
    const TerraciniReport b = scheme_report(c, LinearSystem::canonical(), d);
    EXPECT_EQ(a, b);
  }
  const WitnessRecipe w = witness_quartic();
  EXPECT_EQ(scheme_report(w.curve, w.system, w.divisor), w.report);
}

TEST(HyperellipticProperties, NoMembersAtOrAboveTheGenus) {
  const Curve c = genus3_fixture();
  const auto branch = weierstrass_points(c);
  for (std::size_t x : {3u, 4u})
    for_each_subset(branch.size(), x, [&](const std::vector<std::size_t>& idx) {
      std::vector<CurvePoint> pts;
      for (auto i : idx) pts.push_back(branch[i]);
      const TerraciniReport r = defect_report(c, LinearSystem::canonical(), Divisor::reduced(pts));
      EXPECT_EQ(r.h0_V_minus_2S, 0u);
      EXPECT_FALSE(r.member);
    });
}

TEST(HyperellipticProperties, WeierstrassOnlySubsetsLoseExactlyXConditions) {
  const Curve c = genus3_fixture();
  const auto branch = weierstrass_points(c);
  for (std::size_t x : {1u, 2u})
    for_each_subset(branch.size(), x, [&](const std::vector<std::size_t>& idx) {
      std::vector<CurvePoint> pts;
      for (auto i : idx) pts.push_back(branch[i]);
      const TerraciniReport r = defect_report(c, LinearSystem::canonical(), Divisor::reduced(pts));
      EXPECT_EQ(static_cast<long>(r.h0_V_minus_2S), 3 - static_cast<long>(x));
    });
}

TEST(CoplanarProperties, ReducedDeterminantIsSymmetricUpToSign) {
  for (const Curve& c : {rational_normal_curve(3), witness_quartic().curve, tangent_rational_curve(3, 6, {0, 1, 2}).curve}) {
    const CoplanarLocus loc = coplanar_tangent_locus(c);
    MultiPoly swapped(2);
    for (const auto& [e, v] : loc.reduced.terms()) swapped.add_term({e[1], e[0]}, v);
    const Rational sign = loc.k % 2 == 0 ? 1 : -1;
    // swapping s and t swaps two pairs of rows, so D is symmetric; (s - t)^k picks up (-1)^k
    EXPECT_EQ(swapped, loc.reduced * sign) << c.id() << " k = " << loc.k;
  }
}

TEST(ChartProperties, AlternateLocalParameterKeepsRanks) {
  const Curve c = genus3_fixture();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Divisor d = Divisor::reduced(draw_points(c, 2, mix_seed(41, s))).doubled();
    EXPECT_EQ(rank(jet_matrix(c, LinearSystem::canonical(), d)), rank(jet_matrix(c, LinearSystem::canonical(), d, Chart::Alternate)));
  }
}
