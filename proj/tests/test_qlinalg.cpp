#include <gtest/gtest.h>

#include "terracini/matrix.hpp"
#include "terracini/parse.hpp"
#include "terracini/polynomial.hpp"
#include "terracini/series.hpp"

using namespace terracini;

namespace {

Polynomial t_poly(std::string_view s) { return parse_univariate(s, "t"); }

Series series(std::vector<long> c, std::size_t n) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Series(v, n);
}

}  // namespace

TEST(Rational, CanonicalFormAndSerialisation) {
  EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
  EXPECT_EQ(to_string(make_rational(0, 5)), "0");
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(parse_rational("-3/6"), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
}

TEST(Rational, ParserRejectsFloatsAndZeroDenominators) {
  for (const char* bad : {"0.5", "1e3", "1/0", "", "3/", "/2", "2/3/4"}) {
    try {
      (void)parse_rational(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Rational, SquareRoots) {
  EXPECT_EQ(*rational_sqrt(make_rational(9, 4)), make_rational(3, 2));
  EXPECT_FALSE(rational_sqrt(2));
  EXPECT_FALSE(rational_sqrt(-4));
  EXPECT_EQ(*rational_sqrt(0), Rational(0));
}

TEST(Rref, IdentityHasFullRank) {
  const auto r = rref(Matrix::identity(3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.reduced, Matrix::identity(3));
  EXPECT_EQ(r.pivot_columns, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, ProportionalRows) { EXPECT_EQ(rank(Matrix{{1, 2}, {2, 4}}), 1u); }

TEST(Rref, HandReducedFourByFour) {
  // jets of the twisted cubic at t = 0 and t = 1
  const Matrix m{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 1}, {0, 1, 2, 3}};
  EXPECT_EQ(rank(m), 4u);
  EXPECT_EQ(rref(m).reduced, Matrix::identity(4));
  EXPECT_EQ(determinant(m), Rational(1));
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel_basis(Matrix::identity(2)).empty());
  const auto k = kernel_basis(Matrix{{1, 1}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_NE(k[0][0], 0);
}

TEST(Polynomial, RingOperations) {
  EXPECT_EQ(t_poly("t^2").derivative(), t_poly("2*t"));
  EXPECT_EQ(gcd(t_poly("t^2 - 1"), t_poly("t - 1")), t_poly("t - 1"));
  EXPECT_EQ(t_poly("t^2 + 1")(make_rational(1, 2)), make_rational(5, 4));
  EXPECT_EQ(t_poly("(t+1)^3"), t_poly("t^3 + 3*t^2 + 3*t + 1"));
  EXPECT_TRUE(is_squarefree(t_poly("(t-1)*(t-2)*(t-3)*(t-4)*(t-5)*(t-6)*(t-7)*(t-8)")));
  EXPECT_FALSE(is_squarefree(t_poly("(t-1)^2*(t+3)")));
  EXPECT_EQ(root_multiplicity(t_poly("(t-2)^3*(t+1)"), 2), 3);
  const auto [q, r] = divmod(t_poly("t^3 + 2"), t_poly("t - 1"));
  EXPECT_EQ(q, t_poly("t^2 + t + 1"));
  EXPECT_EQ(r, Polynomial::constant(3));
}

TEST(Polynomial, Interpolation) {
  const std::vector<Rational> xs{0, 1, 2, 3};
  std::vector<Rational> ys;
  const Polynomial p = t_poly("2*t^3 - t + 5/7");
  for (const auto& x : xs) ys.push_back(p(x));
  EXPECT_EQ(interpolate(xs, ys), p);
}

TEST(Resultant, Examples) {
  EXPECT_EQ(resultant(t_poly("t"), t_poly("t")), 0);
  EXPECT_EQ(resultant(t_poly("t^2 - 1"), t_poly("t - 2")), 3);
  // Res(t - a, t - b) = a - b
  EXPECT_EQ(resultant(t_poly("t - 5"), t_poly("t - 2")), 3);
  EXPECT_EQ(resultant(t_poly("t - 2"), t_poly("t - 5")), -3);
}

TEST(Resultant, ZeroPolynomialIsAnError) {
  try {
    (void)resultant(Polynomial(), t_poly("t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
  }
}

TEST(Series, Arithmetic) {
  EXPECT_EQ(series({1, 1}, 3) * series({1, -1}, 3), series({1, 0, -1}, 3));
  EXPECT_EQ(series({1, 1}, 3).inverse(), series({1, -1, 1}, 3));
  EXPECT_EQ(compose(t_poly("t^2"), series({1, 1}, 2)), series({1, 2}, 2));
  // mixed precision truncates to the smaller one
  EXPECT_EQ((series({1, 1}, 2) * series({1, 1, 1}, 5)).precision(), 2u);
}

TEST(Series, InvertingNonUnitThrows) {
  try {
    (void)series({0, 1}, 3).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnit);
  }
}

TEST(ImplicitLift, Examples) {
  const std::vector<std::string> ut{"u", "t"};
  EXPECT_EQ(implicit_lift(parse_polynomial("u - t", ut), 0, 4), series({0, 1}, 4));
  const Series s = implicit_lift(parse_polynomial("u^2 - (1 + t)", ut), 1, 3);
  EXPECT_EQ(s[0], 1);
  EXPECT_EQ(s[1], make_rational(1, 2));
  EXPECT_EQ(s[2], make_rational(-1, 8));
  // f(u) - t^2 with f = prod (u - i), u0 = 1: u = 1 + t^2 / f'(1) + O(t^3)
  const MultiPoly f = parse_polynomial("(u-1)*(u-2)*(u-3)*(u-4)*(u-5)*(u-6)*(u-7)*(u-8) - t^2", ut);
  const Series w = implicit_lift(f, 1, 3);
  EXPECT_EQ(w[0], 1);
  EXPECT_EQ(w[1], 0);
  EXPECT_EQ(w[2], make_rational(-1, 5040));  // f'(1) = -7!
}

TEST(ImplicitLift, SingularChartIsReported) {
  try {
    (void)implicit_lift(parse_polynomial("u^2 - t", {"u", "t"}), 0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonRegularPoint);
  }
}

TEST(Parser, GrammarAndErrors) {
  const std::vector<std::string> xyz{"x", "y", "z"};
  EXPECT_EQ(to_string(parse_polynomial("-x^2", xyz), xyz), "-x^2");
  EXPECT_EQ(to_string(parse_polynomial("2*-y^3", xyz), xyz), "-2*y^3");
  EXPECT_EQ(parse_polynomial("-(x - y)^2 + 2/3*z", xyz),
            parse_polynomial("-x^2 + 2*x*y - y^2 + 2/3*z", xyz));
  try {
    (void)parse_polynomial("x +\n  q", xyz);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos) << e.what();
  }
  try {
    (void)parse_polynomial("0.5*x", xyz);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}
