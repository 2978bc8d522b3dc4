#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "terracini/curve.hpp"
#include "terracini/elimination.hpp"
#include "terracini/error.hpp"
#include "terracini/jets.hpp"
#include "terracini/terracini.hpp"

namespace terracini {

/// A constructed curve together with a designated divisor and the facts that
/// were re-verified when it was built.
struct WitnessRecipe {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  Curve curve;
  Divisor divisor;
  LinearSystem system = LinearSystem::hyperplane();
  bool scheme = false;  // report comes from scheme_report (Z may be non-reduced)
  TerraciniReport report;
  std::vector<std::pair<std::string, std::string>> facts;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::SelfVerificationFailed, what);
}

inline std::string join_rationals(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& q : v) s += (s.empty() ? "" : ",") + to_string(q);
  return s;
}

inline bool column_vanishes(const Matrix& m, std::size_t col) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m(r, col) != 0) return false;
  return true;
}

/// Immersion at t = inf, checked on the reversed expansion.
inline bool immersive_at_infinity(const Curve& c) {
  try {
    (void)jet_block(c, LinearSystem::hyperplane(), param_infinity(), 2);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularPoint) return false;
    throw;
  }
}

}  // namespace detail

/// Rational normal curve (1 : t : ... : t^r).
inline Curve rational_normal_curve(std::size_t r) {
  std::vector<Polynomial> coords;
  for (std::size_t i = 0; i <= r; ++i) coords.push_back(Polynomial::monomial(1, i));
  return make_parametric(std::move(coords), "rnc" + std::to_string(r));
}

/// Rational curve in P^r tangent to the hyperplane {last coordinate = 0} at
/// the k contact parameters. With Q = prod (t - t_i)^2:
///
///   2k > r:  (1, t, ..., t^(r-1), Q * filler),            deg filler = d - 2k
///   2k <= r: (1, t, ..., t^(2k-2), Q * filler * t^j),     j < r + 2 - 2k,
///                                                        deg filler = d - r - 1
///
/// In the second layout the first 2k - 1 coordinates carry every contact jet,
/// so the 2k rows have rank 2k - 1. With smooth_at_infinity the first layout
/// swaps t^(r-1) for t^(d-1), which removes the cusp at t = inf when d > r.
/// Fillers are (t - c)^deg for c = -1, -2, ... skipping the contacts.
inline WitnessRecipe tangent_rational_curve(std::size_t r, std::size_t d, const std::vector<Rational>& contacts,
                                            bool smooth_at_infinity = false) {
  const std::size_t k = contacts.size();
  if (r < 3) throw Error(ErrorKind::AmbientMismatch, "tangent_rational_curve needs r >= 3");
  if (d < r) throw Error(ErrorKind::DegreeMismatch, "need d >= r for a non-degenerate curve in P^r");
  if (2 * k > d) throw Error(ErrorKind::DegreeMismatch, "k contacts need degree at least 2k");
  if (k < 2) throw Error(ErrorKind::DegenerateImage, "at least two contact points are needed for an immersed witness");
  if (std::set<Rational>(contacts.begin(), contacts.end()).size() != k)
    throw Error(ErrorKind::InvalidInput, "contact parameters must be distinct");
  const bool wide = 2 * k > r;
  if (!wide && d < r + 1) throw Error(ErrorKind::DegreeMismatch, "with 2k <= r the construction needs d >= r + 1");

  Polynomial q = Polynomial::constant(1);
  for (const auto& c : contacts) q = q * Polynomial::linear_root(c).pow(2);
  const std::size_t filler_degree = wide ? d - 2 * k : d - r - 1;

  std::optional<Curve> curve;
  Polynomial filler;
  std::string failure;
  long c = -1;
  for (int attempt = 0; attempt < 8; ++attempt, --c) {
    while (std::find(contacts.begin(), contacts.end(), Rational(c)) != contacts.end()) --c;
    filler = Polynomial::linear_root(c).pow(static_cast<unsigned>(filler_degree));
    std::vector<Polynomial> coords;
    if (wide) {
      for (std::size_t i = 0; i + 1 < r; ++i) coords.push_back(Polynomial::monomial(1, i));
      coords.push_back(Polynomial::monomial(1, smooth_at_infinity ? d - 1 : r - 1));
      coords.push_back(q * filler);
    } else {
      for (std::size_t i = 0; i + 1 < 2 * k; ++i) coords.push_back(Polynomial::monomial(1, i));
      for (std::size_t j = 0; j < r + 2 - 2 * k; ++j) coords.push_back(q * filler * Polynomial::monomial(1, j));
    }
    try {
      Curve cand = make_parametric(coords, "tangent-rational");
      if (cand.degree() != static_cast<int>(d)) throw Error(ErrorKind::DegreeMismatch, "degree came out wrong");
      // non-degenerate: coordinates linearly independent
      Matrix coeffs(0, d + 1);
      for (const auto& p : coords) {
        std::vector<Rational> row(d + 1);
        for (int i = 0; i <= p.degree(); ++i) row[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
        coeffs.append_row(row);
      }
      if (rank(coeffs) != r + 1) throw Error(ErrorKind::DegenerateImage, "coordinates are linearly dependent");
      if (smooth_at_infinity && !detail::immersive_at_infinity(cand))
        throw Error(ErrorKind::DegenerateImage, "cusp at infinity");
      curve = std::move(cand);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateImage && e.kind() != ErrorKind::CommonFactor) throw;
      failure = e.what();
    }
  }
  if (!curve) throw Error(ErrorKind::DegenerateImage, "no filler in the family gave a valid curve: " + failure);

  std::vector<CurvePoint> pts;
  for (const auto& t : contacts) pts.push_back(param_point(t));
  WitnessRecipe w{"tangent-rational",
                  {{"r", std::to_string(r)}, {"d", std::to_string(d)}, {"contacts", detail::join_rationals(contacts)}},
                  *curve,
                  Divisor::reduced(pts),
                  LinearSystem::hyperplane(),
                  false,
                  {},
                  {}};
  if (smooth_at_infinity) w.parameters.emplace_back("smooth_at_infinity", "true");
  w.report = defect_report(w.curve, w.system, w.divisor);
  const Matrix jets = jet_matrix(w.curve, w.system, w.divisor.doubled());
  detail::require(detail::column_vanishes(jets, r), "contact jets leave the hyperplane {last coordinate = 0}");
  detail::require(w.report.member, "tangent witness is not a Terracini member");
  w.facts = {{"filler", to_string(filler)},
             {"last_column_zero", "true"},
             {"immersive_at_infinity", detail::immersive_at_infinity(w.curve) ? "true" : "false"}};
  return w;
}

/// The quartic (1 : t : t^2 : t^2 (t - 1)^2) with S = {0, 1}.
inline WitnessRecipe witness_quartic() {
  WitnessRecipe w = tangent_rational_curve(3, 4, {Rational(0), Rational(1)});
  w.name = "witness-quartic";
  w.curve = w.curve.with_id("witness-quartic");
  return w;
}

/// F = x^d + y^d - y z^(d-1) with p = (0:0:1) and Z = (d/2) p. The line y = 0
/// meets the curve only at p, with multiplicity d.
inline WitnessRecipe total_flex_plane_curve(std::size_t d) {
  if (d % 2 != 0) throw Error(ErrorKind::OddDegree, "total_flex_plane_curve needs even d");
  if (d < 4) throw Error(ErrorKind::BadDegree, "total_flex_plane_curve needs d >= 4");
  const auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  const auto du = static_cast<unsigned>(d);
  const MultiPoly f = x.pow(du) + y.pow(du) - y * z.pow(du - 1);
  WitnessRecipe w{"total-flex",
                  {{"d", std::to_string(d)}},
                  make_plane(f, "total-flex-" + std::to_string(d)),
                  Divisor({{plane_point({0, 0, 1}), static_cast<unsigned>(d / 2)}}),
                  LinearSystem::hyperplane(),
                  true,
                  {},
                  {}};
  detail::require(certify_smooth_plane(f), "smoothness certificate failed");
  detail::require(f.restrict_to(0, {0, 0, 1}) == Polynomial::monomial(1, d), "F(x, 0, 1) != x^d");
  w.report = scheme_report(w.curve, w.system, w.divisor);
  detail::require(w.report.member_scheme, "(d/2) p is not a scheme member");
  detail::require(w.report.span_dim == 1, "<2Z> is not the tangent line");
  w.facts = {{"smooth", "certified"}, {"line_y0_section", std::to_string(d) + "*(0:0:1)"}};
  return w;
}

namespace detail {
inline MultiPoly elliptic_q1() {
  const auto x = MultiPoly::variable(4, 0), y = MultiPoly::variable(4, 1), z = MultiPoly::variable(4, 2),
             w = MultiPoly::variable(4, 3);
  return x * x + y * y - z * z + w * x;
}
inline MultiPoly elliptic_q2() {
  const auto x = MultiPoly::variable(4, 0), y = MultiPoly::variable(4, 1), z = MultiPoly::variable(4, 2),
             w = MultiPoly::variable(4, 3);
  return x * x + y * y * Rational(2) - z * z - w * x;
}

inline std::size_t jacobian_rank(const std::vector<MultiPoly>& eqs, const std::vector<Rational>& p) {
  Matrix j(0, p.size());
  for (const auto& e : eqs) {
    std::vector<Rational> row;
    for (const auto& g : e.gradient()) row.push_back(g.evaluate(p));
    j.append_row(row);
  }
  return rank(j);
}
}  // namespace detail

/// Q1 = x^2 + y^2 - z^2 + w x, Q2 = x^2 + 2y^2 - z^2 - w x in P^3 (coordinates
/// x, y, z, w). The plane w = 0 cuts 2 q1 + 2 q2 with q1 = (1:0:1:0),
/// q2 = (1:0:-1:0).
inline WitnessRecipe tangent_elliptic_quartic() {
  const std::vector<MultiPoly> eqs{detail::elliptic_q1(), detail::elliptic_q2()};
  WitnessRecipe w{"elliptic-quartic",
                  {},
                  make_space(3, eqs, "elliptic-quartic"),
                  Divisor::reduced({space_point({1, 0, 1, 0}), space_point({1, 0, -1, 0})}),
                  LinearSystem::hyperplane(),
                  false,
                  {},
                  {}};
  detail::require(detail::jacobian_rank(eqs, {1, 0, 1, 0}) == 2, "Jacobian rank at q1");
  detail::require(detail::jacobian_rank(eqs, {1, 0, -1, 0}) == 2, "Jacobian rank at q2");
  w.report = defect_report(w.curve, w.system, w.divisor);
  const Matrix jets = jet_matrix(w.curve, w.system, w.divisor.doubled());
  detail::require(detail::column_vanishes(jets, 3), "tangent lines at q1, q2 leave w = 0");
  detail::require(w.report.member, "elliptic quartic witness is not a member at x = 2");
  w.facts = {{"jacobian_rank_q1", "2"}, {"jacobian_rank_q2", "2"}, {"w_column_zero", "true"}};
  return w;
}

/// The elliptic quartic together with the conic (1 : 0 : t : t^2) in y = 0,
/// tangent to w = 0 at q3 = (1:0:0:0). S = {q1, q2 on component 0; q3 on 1}.
inline WitnessRecipe tangent_nodal_union() {
  const WitnessRecipe quartic = tangent_elliptic_quartic();
  const Curve conic = make_parametric({Polynomial::constant(1), Polynomial(), Polynomial::monomial(1, 1), Polynomial::monomial(1, 2)},
                                      "conic");
  WitnessRecipe w{"nodal-union",
                  {},
                  make_nodal({quartic.curve, conic}, "nodal-union"),
                  Divisor::reduced({space_point({1, 0, 1, 0}, 0), space_point({1, 0, -1, 0}, 0), param_point(0, 1)}),
                  LinearSystem::hyperplane(),
                  false,
                  {},
                  {}};
  const auto [a, b] = tangent_line(conic, param_point(0));
  detail::require(a[3] == 0 && b[3] == 0, "conic tangent line at q3 leaves w = 0");
  w.report = defect_report(w.curve, w.system, w.divisor);
  const Matrix jets = jet_matrix(w.curve, w.system, w.divisor.doubled());
  detail::require(detail::column_vanishes(jets, 3), "jet rows leave w = 0");
  detail::require(w.report.member, "nodal union witness is not a member at x = 3");
  w.facts = {{"conic_tangent_line", to_string(a) + " " + to_string(b)}, {"w_column_zero", "true"}};
  return w;
}

/// Rational abscissa a with f(a) a nonzero square, in order of increasing height.
inline std::optional<Rational> find_square_fiber(const Polynomial& f, long height = kRationalSearchHeight) {
  for (long h = 0; h <= height; ++h)
    for (long q = 1; q <= std::max(h, 1L); ++q)
      for (long p = -h; p <= h; ++p) {
        if (std::max(std::abs(p), q) != h && !(h == 0 && p == 0)) continue;
        const Rational a = make_rational(p, q);
        if (a.get_den() != q) continue;
        const Rational fa = f(a);
        if (fa != 0 && rational_sqrt(fa)) return a;
      }
  return std::nullopt;
}

enum class FiberMode { None, Given, Search };

/// y^2 = prod (x - root_i) with 2g + 2 roots. With a fiber, the designated
/// divisor is the pair {(a, b), (a, -b)} and the report is canonical.
inline WitnessRecipe split_hyperelliptic(int g, const std::vector<Rational>& roots, FiberMode mode = FiberMode::None,
                                         const Rational& fiber_x = 0) {
  if (g < 2) throw Error(ErrorKind::BadDegree, "genus must be at least 2");
  if (roots.size() != static_cast<std::size_t>(2 * g + 2))
    throw Error(ErrorKind::BadDegree, "expected " + std::to_string(2 * g + 2) + " roots for genus " + std::to_string(g));
  WitnessRecipe w{"split-hyperelliptic",
                  {{"g", std::to_string(g)}, {"roots", detail::join_rationals(roots)}},
                  make_split_hyperelliptic(roots, 1, "hyperelliptic-g" + std::to_string(g)),
                  Divisor(),
                  LinearSystem::canonical(),
                  false,
                  {},
                  {}};
  const Polynomial& f = w.curve.as<Hyperelliptic>().f;
  std::optional<Rational> a;
  if (mode == FiberMode::Given) {
    const Rational fa = f(fiber_x);
    if (fa == 0 || !rational_sqrt(fa)) throw Error(ErrorKind::NotASquare, "f(" + to_string(fiber_x) + ") is not a nonzero square");
    a = fiber_x;
  } else if (mode == FiberMode::Search) {
    a = find_square_fiber(f);
    if (!a) throw Error(ErrorKind::NoRationalPointFound, "no rational fiber pair of bounded height");
  }
  if (!a) {
    w.divisor = Divisor::reduced({weierstrass_points(w.curve)[0], weierstrass_points(w.curve)[1]});
  } else {
    const Rational b = *rational_sqrt(f(*a));
    w.divisor = Divisor::reduced({hyper_point(w.curve, *a, b), hyper_point(w.curve, *a, -b)});
    w.parameters.emplace_back("fiber_x", to_string(*a));
  }
  w.report = defect_report(w.curve, w.system, w.divisor);
  const CanonicalMembership rr = canonical_membership(w.curve, w.divisor);
  w.facts = {{"h0_2S", std::to_string(rr.h0_2S)}, {"h0_K_minus_2S", std::to_string(rr.h0_K_minus_2S)}};
  if (a) {
    detail::require(w.report.member, "fiber pair of the g^1_2 is not a canonical member");
    detail::require(rr.h0_2S >= 2, "fiber pair has h0(2S) < 2");
    w.facts.emplace_back("fiber_pair_member", "true");
  } else if (g >= 3) {
    detail::require(w.report.member, "Weierstrass pair is not a canonical member");
  }
  return w;
}

inline std::vector<Rational> integer_range(long from, long to) {
  std::vector<Rational> v;
  for (long i = from; i <= to; ++i) v.emplace_back(i);
  return v;
}

/// Genus-3 fixture y^2 = (x - 1)(x - 2)...(x - 8).
inline Curve genus3_fixture() { return make_split_hyperelliptic(integer_range(1, 8), 1, "hyperelliptic-g3"); }

/// Split fixture of genus g with roots +-1, ..., +-(g + 1); f(0) is a square.
inline std::vector<Rational> symmetric_roots(int g) {
  std::vector<Rational> v;
  for (long i = 1; i <= g + 1; ++i) {
    v.emplace_back(-i);
    v.emplace_back(i);
  }
  return v;
}

inline Curve fermat_curve(unsigned d) {
  const auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  return make_plane(x.pow(d) + y.pow(d) + z.pow(d), "fermat-" + std::to_string(d));
}

/// Smooth quartic (x^2 - z^2)^2 + y (x^2 y + y^3 + z^3); the line y = 0 is
/// tangent at (1:0:1) and (-1:0:1).
inline Curve planted_bitangent_quartic() {
  const auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  const MultiPoly xz = x * x - z * z;
  return make_plane(xz * xz + y * (x * x * y + y.pow(3) + z.pow(3)), "planted-bitangent");
}

struct FlexWeight {
  long total = 0;
  std::optional<long> local;  // at the requested point
  std::uint64_t seed = 0;     // seed of the coordinate change that succeeded
};

/// Intersection number of F with its Hessian, from deg Res_y(G, H_G) where
/// G = F(A v) for a seeded random A. The local weight at `at` is the root
/// multiplicity of its projection, valid when no other intersection point
/// shares that abscissa (checked).
inline FlexWeight flex_weight(const Curve& curve, std::uint64_t seed = 1, const std::optional<ProjectivePoint>& at = std::nullopt,
                              int attempts = 12) {
  const MultiPoly& f = curve.as<PlaneImplicit>().form;
  const int d = f.total_degree();
  if (d < 3) throw Error(ErrorKind::BadDegree, "flex weights need degree >= 3");
  if (!certify_smooth_plane(f, seed)) throw Error(ErrorKind::SingularCurve, "could not certify that the curve is smooth");
  Rng rng(seed);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const Matrix a = random_invertible(3, rng);
    const MultiPoly g = change_coordinates(f, a);
    const MultiPoly h = hessian_determinant(g);
    if (g.evaluate({0, 1, 0}) == 0 || h.evaluate({0, 1, 0}) == 0) continue;
    // nothing on z = 0 in common
    if (gcd(g.restrict_to(0, {0, 1, 0}), h.restrict_to(0, {0, 1, 0})).degree() > 0) continue;
    if (g.evaluate({1, 0, 0}) == 0 && h.evaluate({1, 0, 0}) == 0) continue;
    const Polynomial res = resultant_in_y(g, h);
    if (res.is_zero()) throw Error(ErrorKind::EliminationDegenerate, "F and its Hessian share a component");
    FlexWeight out{res.degree(), std::nullopt, seed};
    if (at) {
      // v = A^-1 p in the new coordinates
      const auto sol = kernel_basis([&] {
        Matrix m(3, 4);
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) m(i, j) = a(i, j);
          m(i, 3) = -(*at)[i];
        }
        return m;
      }());
      if (sol.size() != 1 || sol[0][3] == 0) continue;
      std::vector<Rational> v{sol[0][0] / sol[0][3], sol[0][1] / sol[0][3], sol[0][2] / sol[0][3]};
      if (v[2] == 0) continue;
      const Rational px = v[0] / v[2], py = v[1] / v[2];
      // the fiber over px must meet F = H only at py
      const Polynomial common = gcd(g.restrict_to(1, {px, 0, 1}), h.restrict_to(1, {px, 0, 1}));
      if (common.degree() != 1) continue;
      out.local = root_multiplicity(res, px);
    }
    return out;
  }
  throw Error(ErrorKind::EliminationDegenerate, "no admissible coordinate change after " + std::to_string(attempts) + " attempts");
}

inline long flex_weight_total(const Curve& curve, std::uint64_t seed = 1) { return flex_weight(curve, seed).total; }

}  // namespace terracini
