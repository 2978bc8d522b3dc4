#include <gtest/gtest.h>

#include "terracini/parse.hpp"
#include "terracini/terracini.hpp"
#include "terracini/witness.hpp"

using namespace terracini;

namespace {

Polynomial x_poly(std::string_view s) { return parse_univariate(s, "x"); }

MultiPoly plane_form(std::string_view s) { return parse_polynomial(s, {"x", "y", "z"}); }

template <class F>
std::optional<ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

bool row_is_zero(const Matrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(r, c) != 0) return false;
  return true;
}

}  // namespace

TEST(MakeCurve, RationalNormalCubic) {
  const Curve c = rational_normal_curve(3);
  EXPECT_EQ(c.kind(), CurveKind::Parametric);
  EXPECT_EQ(c.ambient(), 3u);
  EXPECT_EQ(c.degree(), 3);
  EXPECT_EQ(LinearSystem::hyperplane().dim(c), 4u);
}

TEST(MakeCurve, HyperellipticGenusFromDegree) {
  const Curve c = make_hyperelliptic(Polynomial::from_roots(integer_range(1, 8)));
  EXPECT_EQ(c.genus(), 3);
  EXPECT_EQ(LinearSystem::canonical().dim(c), 3u);
  EXPECT_EQ(make_hyperelliptic(Polynomial::from_roots(integer_range(1, 7))).genus(), 3);
}

TEST(MakeCurve, PlaneQuartic) {
  const Curve c = make_plane(plane_form("x^4 + y^4 - y*z^3"));
  EXPECT_EQ(c.degree(), 4);
  EXPECT_EQ(c.genus(), 3);
  EXPECT_TRUE(certify_smooth_plane(c.as<PlaneImplicit>().form));
  EXPECT_FALSE(certify_smooth_plane(plane_form("x^2*z - y^3")));  // cuspidal cubic
}

TEST(MakeCurve, Errors) {
  EXPECT_EQ(kind_of([] { make_parametric({Polynomial{0, 1}, Polynomial{0, 0, 1}}); }), ErrorKind::CommonFactor);
  EXPECT_EQ(kind_of([] { make_parametric({Polynomial{1}}); }), ErrorKind::AmbientMismatch);
  EXPECT_EQ(kind_of([] { make_hyperelliptic(x_poly("(x-1)^2*(x-2)*(x-3)*(x-4)*(x-5)")); }), ErrorKind::NonSquarefree);
  EXPECT_EQ(kind_of([] { make_hyperelliptic(x_poly("x^4 - 2")); }), ErrorKind::BadDegree);
  EXPECT_EQ(kind_of([] { make_hyperelliptic(x_poly("x^6 - 2"), true); }), ErrorKind::NotSplit);
  EXPECT_EQ(kind_of([] { make_plane(plane_form("x^2 + y")); }), ErrorKind::BadDegree);
}

TEST(JetBlock, RationalNormalCubicAtZero) {
  const Matrix b = jet_block(rational_normal_curve(3), LinearSystem::hyperplane(), param_point(0), 2);
  EXPECT_EQ(b, (Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}}));
}

TEST(JetBlock, WeierstrassPointHasRankOne) {
  const Curve c = genus3_fixture();
  const Matrix b = jet_block(c, LinearSystem::canonical(), hyper_point(c, 1, 0), 2);
  ASSERT_EQ(b.rows(), 2u);
  EXPECT_EQ(rank(b), 1u);
  EXPECT_NE(b(0, 0), 0);
  EXPECT_EQ(b(0, 0), b(0, 1));
  EXPECT_EQ(b(0, 1), b(0, 2));
}

TEST(JetBlock, GeneralHyperellipticPointHasRankTwo) {
  const Curve c = genus3_fixture();
  EXPECT_EQ(rank(jet_block(c, LinearSystem::canonical(), hyper_point_sqrt(c, 0, 1), 2)), 2u);
  EXPECT_EQ(rank(jet_block(c, LinearSystem::canonical(), hyper_point_sqrt(c, make_rational(1, 3), -1), 2)), 2u);
}

TEST(JetBlock, TotalFlexChart) {
  const Curve c = make_plane(plane_form("x^4 + y^4 - y*z^3"));
  const Matrix b = jet_block(c, LinearSystem::hyperplane(), plane_point({0, 0, 1}), 4);
  EXPECT_EQ(rank(b), 2u);
  EXPECT_TRUE(row_is_zero(b, 2));
  EXPECT_TRUE(row_is_zero(b, 3));
  // y(t) = t^4 + ... shows up in the fifth row
  const Matrix b5 = jet_block(c, LinearSystem::hyperplane(), plane_point({0, 0, 1}), 5);
  EXPECT_EQ(rank(b5), 3u);
}

TEST(JetBlock, ChartsAgreeOnRank) {
  const Curve c = make_plane(plane_form("x^4 + y^4 - y*z^3"));
  const Divisor z({{plane_point({0, 0, 1}), 4}});
  EXPECT_EQ(rank(jet_matrix(c, LinearSystem::hyperplane(), z)), rank(jet_matrix(c, LinearSystem::hyperplane(), z, Chart::Alternate)));
}

TEST(JetBlock, PointsOffTheCurveAreRejected) {
  const Curve c = make_plane(plane_form("x^4 + y^4 - y*z^3"));
  EXPECT_EQ(kind_of([&] { (void)jet_block(c, LinearSystem::hyperplane(), plane_point({1, 1, 1}), 2); }), ErrorKind::PointNotOnCurve);
  EXPECT_EQ(kind_of([&] { (void)hyper_point(genus3_fixture(), 0, 1); }), ErrorKind::PointNotOnCurve);
  EXPECT_EQ(kind_of([&] { (void)jet_block(c, LinearSystem::hyperplane(), plane_point({0, 0, 1}), 0); }),
            ErrorKind::UnsupportedMultiplicity);
}

TEST(TangentLine, RationalNormalCubic) {
  const auto [a, b] = tangent_line(rational_normal_curve(3), param_point(0));
  EXPECT_EQ(a, ProjectivePoint({1, 0, 0, 0}));
  EXPECT_EQ(b, ProjectivePoint({0, 1, 0, 0}));
}

TEST(TangentLine, WitnessQuarticAndEllipticQuarticStayInsideW) {
  const auto [a, b] = tangent_line(witness_quartic().curve, param_point(0));
  EXPECT_EQ(a[3], 0);
  EXPECT_EQ(b[3], 0);
  const WitnessRecipe e = tangent_elliptic_quartic();
  const auto [p, q] = tangent_line(e.curve, space_point({1, 0, 1, 0}));
  EXPECT_EQ(p[3], 0);
  EXPECT_EQ(q[3], 0);
}

TEST(WeierstrassPoints, SplitModels) {
  const auto even = weierstrass_points(genus3_fixture());
  ASSERT_EQ(even.size(), 8u);
  for (std::size_t i = 0; i < even.size(); ++i) {
    const auto& h = std::get<HyperPoint>(even[i].where);
    EXPECT_EQ(h.x, Rational(static_cast<long>(i) + 1));
    EXPECT_TRUE(h.is_weierstrass());
  }
  // odd model: the eighth branch point sits at infinity and is not listed
  const Curve odd = make_hyperelliptic(Polynomial::from_roots(integer_range(1, 7)), true);
  EXPECT_EQ(weierstrass_points(odd).size(), 7u);
  EXPECT_EQ(kind_of([] { (void)weierstrass_points(make_hyperelliptic(x_poly("x^8 - 3"))); }), ErrorKind::NotSplit);
}

TEST(SamplePoint, ParametricRange) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = std::get<ParamValue>(sample_point(rational_normal_curve(3), s).where);
    EXPECT_FALSE(p.at_infinity);
    EXPECT_LE(abs(p.t), Rational(kParamSampleRadius));
    EXPECT_EQ(p.t.get_den(), 1);
  }
  EXPECT_EQ(sample_point(rational_normal_curve(3), 7), sample_point(rational_normal_curve(3), 7));
}

TEST(SamplePoint, SquareFiberGivesRationalOrdinate) {
  const Curve c = make_split_hyperelliptic(symmetric_roots(5));
  const CurvePoint p = hyper_point_sqrt(c, 0, 1);
  const auto& h = std::get<HyperPoint>(p.where);
  ASSERT_TRUE(h.y);
  EXPECT_EQ(*h.y, 720);
}

TEST(SamplePoint, PlaneCurveDrawsFromRationalPoints) {
  const Curve c = make_plane(plane_form("x^4 + y^4 - y*z^3"));
  const auto pts = plane_rational_points(c);
  ASSERT_FALSE(pts.empty());
  EXPECT_NE(std::find(pts.begin(), pts.end(), plane_point({0, 0, 1})), pts.end());
  for (std::uint64_t s = 0; s < 5; ++s) {
    const CurvePoint p = sample_point(c, s);
    EXPECT_NE(std::find(pts.begin(), pts.end(), p), pts.end());
  }
}

TEST(Divisor, Bookkeeping) {
  const Divisor s = Divisor::reduced({param_point(0), param_point(1)});
  EXPECT_EQ(s.degree(), 2u);
  EXPECT_TRUE(s.is_reduced());
  EXPECT_EQ(s.doubled().degree(), 4u);
  EXPECT_FALSE(s.doubled().is_reduced());
  EXPECT_EQ(to_string(s.plus(param_infinity(), 3)), "t=0 + t=1 + 3*t=inf");
  EXPECT_EQ(kind_of([] { (void)Divisor::reduced({param_point(0), param_point(0)}); }), ErrorKind::InvalidInput);
}
