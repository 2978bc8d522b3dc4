#include <gtest/gtest.h>

#include "terracini/checks.hpp"
#include "terracini/searchlab.hpp"
#include "terracini/witness.hpp"

using namespace terracini;

TEST(MixSeed, DeterministicAndSpread) {
  EXPECT_EQ(mix_seed(1, 0), mix_seed(1, 0));
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
}

TEST(EmptinessProbe, RationalNormalCurves) {
  const auto sys = LinearSystem::hyperplane();
  const ProbeResult three = emptiness_probe(rational_normal_curve(3), sys, 2, 200, 1);
  EXPECT_EQ(three.trials, 200u);
  EXPECT_TRUE(three.passed());
  EXPECT_EQ(three.verdict(), "all-passed");
  EXPECT_TRUE(emptiness_probe(rational_normal_curve(5), sys, 3, 200, 1).passed());
}

TEST(EmptinessProbe, FindsThePlantedPair) {
  const WitnessRecipe w = witness_quartic();
  const ProbeResult p = emptiness_probe(w.curve, w.system, 2, 30, 5, w.divisor);
  ASSERT_EQ(p.failures, 1u);
  EXPECT_EQ(p.verdict(), "counterexample-found");
  EXPECT_EQ(to_string(p.witnesses.front()), to_string(w.divisor));
  // without the plant, random pairs have defect 0
  EXPECT_TRUE(emptiness_probe(w.curve, w.system, 2, 30, 5).passed());
}

TEST(GenericRankProbe, ImposedConditionCounts) {
  const Curve c = rational_normal_curve(3);
  EXPECT_TRUE(generic_rank_probe(c, LinearSystem::hyperplane(), {2, 2}, 20, 1).passed());
  EXPECT_TRUE(generic_rank_probe(c, LinearSystem::hyperplane(), {1, 1, 1}, 20, 1).passed());
  EXPECT_TRUE(generic_rank_probe(genus3_fixture(), LinearSystem::canonical(), {1, 1}, 20, 1).passed());
}

TEST(RiemannRochProbe, AgreesOnEveryQuery) {
  std::size_t members = 0;
  const ProbeResult p = rr_dichotomy_probe(genus3_fixture(), 60, 9, &members);
  EXPECT_EQ(p.trials, 60u);
  EXPECT_TRUE(p.passed());
  EXPECT_GT(members, 0u);
  EXPECT_LT(members, 60u);
}

TEST(CoplanarLocus, RationalNormalCubicIsEmpty) {
  const CoplanarLocus loc = coplanar_tangent_locus(rational_normal_curve(3));
  EXPECT_EQ(loc.reduced.total_degree(), 0);
  EXPECT_FALSE(loc.reduced.is_zero());
  EXPECT_EQ(loc.k, 4u);
  EXPECT_TRUE(loc.exact_zeros.empty());
}

TEST(CoplanarLocus, WitnessQuarticRecoversThePlantedPair) {
  const CoplanarLocus loc = coplanar_tangent_locus(witness_quartic().curve);
  EXPECT_EQ(loc.reduced.evaluate({0, 1}), 0);
  const auto hit = std::find(loc.exact_zeros.begin(), loc.exact_zeros.end(), std::pair<Rational, Rational>(0, 1));
  EXPECT_NE(hit, loc.exact_zeros.end());
}

TEST(CoplanarLocus, NeedsASpaceCurve) {
  try {
    (void)coplanar_tangent_locus(rational_normal_curve(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSpaceCurve);
  }
}

TEST(StripDiagonal, RemovesExactPower) {
  const auto s = MultiPoly::variable(2, 0), t = MultiPoly::variable(2, 1);
  const MultiPoly diff = s - t;
  const auto [rest, k] = strip_diagonal(diff * diff * diff * (s + t + MultiPoly::constant(2, 1)));
  EXPECT_EQ(k, 3u);
  EXPECT_EQ(rest, s + t + MultiPoly::constant(2, 1));
}

TEST(WeierstrassSubsets, GenusThreePairs) {
  const SubsetSuite pairs = weierstrass_subset_suite(genus3_fixture(), 2);
  EXPECT_EQ(pairs.rows.size(), 28u);
  EXPECT_EQ(pairs.members, 28u);
  EXPECT_EQ(pairs.weierstrass_disagreements, 0u);
  for (const auto& r : pairs.rows) EXPECT_EQ(r.actual_h0, 1);
}

TEST(WeierstrassSubsets, SinglesAndTriples) {
  const SubsetSuite singles = weierstrass_subset_suite(genus3_fixture(), 1);
  EXPECT_EQ(singles.rows.size(), 8u);
  EXPECT_EQ(singles.members, 8u);
  const SubsetSuite triples = weierstrass_subset_suite(genus3_fixture(), 3);
  EXPECT_EQ(triples.rows.size(), 56u);
  EXPECT_EQ(triples.members, 0u);
  for (const auto& r : triples.rows) {
    EXPECT_EQ(r.actual_h0, 0);
    EXPECT_FALSE(r.predicted_h0.has_value());
  }
}

TEST(WeierstrassSubsets, FiberPairRowsShowTheMismatch) {
  const Curve c = genus3_fixture();
  const SubsetSuite s = weierstrass_subset_suite(c, 2, std::make_pair(hyper_point_sqrt(c, 0, 1), hyper_point_sqrt(c, 0, -1)));
  EXPECT_EQ(s.rows.size(), 29u);
  EXPECT_EQ(s.fiber_disagreements, 1u);
  EXPECT_EQ(s.weierstrass_disagreements, 0u);
}

TEST(WeierstrassSubsets, CapsAreEnforced) {
  try {
    (void)weierstrass_subset_suite(make_split_hyperelliptic(integer_range(1, 16)), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionNotMet);
  }
}

TEST(BitangentSearch, PlantedLineIsConfirmed) {
  const BitangentSearch r = bitangent_search(planted_bitangent_quartic(), 100, 1);
  bool found = false;
  for (const auto& f : r.findings)
    if (f.kind == "bitangent" && f.line == ProjectivePoint({0, 1, 0})) {
      found = true;
      EXPECT_EQ(f.s.degree(), 2u);
      EXPECT_TRUE(f.report.member);
    }
  EXPECT_TRUE(found);
}

TEST(BitangentSearch, HyperflexAndConic) {
  const BitangentSearch flex = bitangent_search(total_flex_plane_curve(4).curve, 100, 1);
  bool hyper = false;
  for (const auto& f : flex.findings) hyper = hyper || (f.kind == "hyperflex" && f.report.member_scheme);
  EXPECT_TRUE(hyper);
  const auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  EXPECT_TRUE(bitangent_search(make_plane(x * x + y * y - z * z), 100, 1).findings.empty());
}

TEST(Invariance, RanksDoNotDependOnChartOrCoordinates) {
  EXPECT_TRUE(invariance_probe(rational_normal_curve(4), 2, 10, 3).passed());
  EXPECT_TRUE(invariance_probe(planted_bitangent_quartic(), 2, 5, 3).passed());
}

TEST(ImplicitLiftProbe, ResidualsVanish) { EXPECT_TRUE(implicit_lift_probe(20, 4).passed()); }
