#include <gtest/gtest.h>

#include "terracini/witness.hpp"

using namespace terracini;

namespace {

template <class F>
std::optional<ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

std::string fact(const WitnessRecipe& w, const std::string& key) {
  for (const auto& [k, v] : w.facts)
    if (k == key) return v;
  return "<missing>";
}

std::vector<Rational> rats(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(TangentRationalCurve, WitnessQuartic) {
  const WitnessRecipe w = witness_quartic();
  const auto& coords = w.curve.as<ParametricRational>().coords;
  ASSERT_EQ(coords.size(), 4u);
  EXPECT_EQ(coords[3], (Polynomial{0, 0, 1, -2, 1}));  // t^2 (t - 1)^2
  EXPECT_EQ(w.report.rank, 3u);
  EXPECT_EQ(w.report.defect, 1);
  EXPECT_TRUE(w.report.member);
  EXPECT_EQ(fact(w, "last_column_zero"), "true");
}

TEST(TangentRationalCurve, QuinticInPFive) {
  const WitnessRecipe w = tangent_rational_curve(5, 6, rats({0, 1}));
  EXPECT_EQ(w.curve.ambient(), 5u);
  EXPECT_EQ(w.curve.degree(), 6);
  EXPECT_EQ(w.report.x, 2u);
  EXPECT_TRUE(w.report.member);
  EXPECT_LT(2 * w.report.x, 5u);
}

TEST(TangentRationalCurve, ThreeContactsInPThree) {
  const WitnessRecipe w = tangent_rational_curve(3, 6, rats({0, 1, 2}));
  EXPECT_EQ(w.report.x, 3u);
  EXPECT_TRUE(w.report.member);
}

TEST(TangentRationalCurve, SmoothAtInfinityOption) {
  const WitnessRecipe plain = tangent_rational_curve(3, 6, rats({0, 1, 2}));
  const WitnessRecipe smooth = tangent_rational_curve(3, 6, rats({0, 1, 2}), true);
  EXPECT_EQ(fact(plain, "immersive_at_infinity"), "false");
  EXPECT_EQ(fact(smooth, "immersive_at_infinity"), "true");
  EXPECT_TRUE(smooth.report.member);
}

TEST(TangentRationalCurve, Guards) {
  EXPECT_EQ(kind_of([] { (void)tangent_rational_curve(3, 2, rats({0, 1})); }), ErrorKind::DegreeMismatch);
  EXPECT_EQ(kind_of([] { (void)tangent_rational_curve(3, 4, rats({0, 1, 2})); }), ErrorKind::DegreeMismatch);
  EXPECT_EQ(kind_of([] { (void)tangent_rational_curve(2, 4, rats({0, 1})); }), ErrorKind::AmbientMismatch);
  EXPECT_EQ(kind_of([] { (void)tangent_rational_curve(3, 4, rats({0})); }), ErrorKind::DegenerateImage);
  EXPECT_EQ(kind_of([] { (void)tangent_rational_curve(3, 4, rats({1, 1})); }), ErrorKind::InvalidInput);
}

TEST(TotalFlex, QuarticAndSextic) {
  const WitnessRecipe four = total_flex_plane_curve(4);
  EXPECT_TRUE(four.scheme);
  EXPECT_EQ(four.report.x, 2u);
  EXPECT_TRUE(four.report.member_scheme);
  EXPECT_EQ(four.report.span_dim, 1);
  const WitnessRecipe six = total_flex_plane_curve(6);
  EXPECT_EQ(six.report.x, 3u);
  EXPECT_TRUE(six.report.member_scheme);
  EXPECT_EQ(six.report.span_dim, 1);
  EXPECT_LE(six.report.span_dim, 2 * 3 - 2);
}

TEST(TotalFlex, Guards) {
  EXPECT_EQ(kind_of([] { (void)total_flex_plane_curve(5); }), ErrorKind::OddDegree);
  EXPECT_EQ(kind_of([] { (void)total_flex_plane_curve(2); }), ErrorKind::BadDegree);
}

TEST(EllipticQuartic, MemberWithTangentsInW) {
  const WitnessRecipe w = tangent_elliptic_quartic();
  EXPECT_EQ(w.report.x, 2u);
  EXPECT_TRUE(w.report.member);
  EXPECT_GE(w.report.defect, 1);
  EXPECT_EQ(detail::jacobian_rank({detail::elliptic_q1(), detail::elliptic_q2()}, {1, 0, 1, 0}), 2u);
  EXPECT_EQ(detail::jacobian_rank({detail::elliptic_q1(), detail::elliptic_q2()}, {1, 0, -1, 0}), 2u);
}

TEST(NodalUnion, MemberAtThree) {
  const WitnessRecipe w = tangent_nodal_union();
  EXPECT_EQ(w.curve.kind(), CurveKind::Nodal);
  EXPECT_EQ(w.report.x, 3u);
  EXPECT_TRUE(w.report.member);
  const auto [a, b] = tangent_line(w.curve, param_point(0, 1));
  EXPECT_EQ(a[3], 0);
  EXPECT_EQ(b[3], 0);
}

TEST(SplitHyperelliptic, GenusThreeFixture) {
  const WitnessRecipe w = split_hyperelliptic(3, integer_range(1, 8));
  EXPECT_EQ(w.curve.genus(), 3);
  EXPECT_EQ(weierstrass_points(w.curve).size(), 8u);
  EXPECT_TRUE(w.report.member);
}

TEST(SplitHyperelliptic, GenusFiveFiberPair) {
  const WitnessRecipe w = split_hyperelliptic(5, symmetric_roots(5), FiberMode::Search);
  EXPECT_EQ(fact(w, "fiber_pair_member"), "true");
  EXPECT_EQ(w.report.x, 2u);
  EXPECT_TRUE(w.report.member);
  EXPECT_LT(2 * 2, 5);
  const auto& p = std::get<HyperPoint>(w.divisor.entries()[0].point.where);
  const auto& q = std::get<HyperPoint>(w.divisor.entries()[1].point.where);
  EXPECT_EQ(p.x, q.x);
  EXPECT_EQ(*p.y, -*q.y);
}

TEST(SplitHyperelliptic, Guards) {
  EXPECT_EQ(kind_of([] { (void)split_hyperelliptic(3, rats({1, 1, 2, 3, 4, 5, 6, 7})); }), ErrorKind::NonSquarefree);
  EXPECT_EQ(kind_of([] { (void)split_hyperelliptic(3, integer_range(1, 8), FiberMode::Given, Rational(0)); }), ErrorKind::NotASquare);
  EXPECT_EQ(kind_of([] { (void)split_hyperelliptic(3, integer_range(1, 7)); }), ErrorKind::BadDegree);
}

TEST(FlexWeight, TotalsMatchThreeDTimesDMinusTwo) {
  EXPECT_EQ(flex_weight_total(fermat_curve(4)), 24);
  EXPECT_EQ(flex_weight_total(total_flex_plane_curve(4).curve), 24);
  EXPECT_EQ(flex_weight_total(fermat_curve(3)), 9);
  EXPECT_EQ(flex_weight_total(fermat_curve(5)), 45);
}

TEST(FlexWeight, HyperflexCarriesAtLeastTwo) {
  const FlexWeight w = flex_weight(total_flex_plane_curve(4).curve, 1, ProjectivePoint({0, 0, 1}));
  ASSERT_TRUE(w.local);
  EXPECT_GE(*w.local, 2);
  // an ordinary flex of the Fermat cubic has weight 1
  const FlexWeight o = flex_weight(fermat_curve(3), 1, ProjectivePoint({1, -1, 0}));
  ASSERT_TRUE(o.local);
  EXPECT_EQ(*o.local, 1);
}

TEST(FlexWeight, Guards) {
  const auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  EXPECT_EQ(kind_of([&] { (void)flex_weight_total(make_plane(x * x * z - y * y * y)); }), ErrorKind::SingularCurve);
  EXPECT_EQ(kind_of([&] { (void)flex_weight_total(make_plane(x * x + y * y - z * z)); }), ErrorKind::BadDegree);
}
