#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "terracini/curve.hpp"
#include "terracini/error.hpp"
#include "terracini/matrix.hpp"
#include "terracini/random.hpp"
#include "terracini/series.hpp"

namespace terracini {

enum class SystemKind { Hyperplane, Canonical };

/// The linear system V whose conditions we count. Hyperplane: coordinate
/// functions (dim r + 1). Canonical: x^i dx / y on a hyperelliptic curve
/// (dim g).
class LinearSystem {
 public:
  static LinearSystem hyperplane() { return LinearSystem(SystemKind::Hyperplane); }
  static LinearSystem canonical() { return LinearSystem(SystemKind::Canonical); }

  [[nodiscard]] SystemKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string name() const { return kind_ == SystemKind::Hyperplane ? "hyperplane" : "canonical"; }

  [[nodiscard]] std::size_t dim(const Curve& curve) const {
    check(curve);
    if (kind_ == SystemKind::Canonical) return static_cast<std::size_t>(*curve.genus());
    return curve.ambient() + 1;
  }

  void check(const Curve& curve) const {
    const bool hyper = curve.is<Hyperelliptic>();
    if (kind_ == SystemKind::Canonical && !hyper)
      throw Error(ErrorKind::UnsupportedSystem, "the canonical system is implemented for hyperelliptic curves only");
    if (kind_ == SystemKind::Hyperplane && hyper)
      throw Error(ErrorKind::UnsupportedSystem, "hyperelliptic curves carry the canonical system, not a hyperplane system");
  }

  friend bool operator==(const LinearSystem&, const LinearSystem&) = default;

 private:
  explicit LinearSystem(SystemKind k) : kind_(k) {}
  SystemKind kind_;
};

/// Which local parameter the engine uses. Alternate forces the other affine
/// coordinate on plane curves (when it is a valid parameter) and otherwise
/// reparametrises t -> t + t^2.
enum class Chart { Automatic, Alternate };

namespace detail {

inline Series reparametrize(const Series& s) {
  Series u = Series::variable(s.precision());
  if (s.precision() > 2) u[2] = 1;
  return compose(s, u);
}

inline std::vector<Series> reparametrize_all(std::vector<Series> v) {
  for (auto& s : v) s = reparametrize(s);
  return v;
}

inline std::size_t rank_of_rows(const std::vector<Series>& basis, std::size_t rows) {
  Matrix m(rows, basis.size());
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t i = 0; i < basis.size(); ++i) m(j, i) = basis[i][j];
  return rank(m);
}

inline std::vector<Series> parametric_expansion(const ParametricRational& c, const ParamValue& p, std::size_t n) {
  int d = 0;
  for (const auto& q : c.coords) d = std::max(d, q.degree());
  std::vector<Series> out;
  for (const auto& q : c.coords) {
    const Polynomial local = p.at_infinity ? q.reversed(static_cast<std::size_t>(d)) : q.shifted(p.t);
    out.push_back(Series::from_polynomial(local, n));
  }
  return out;
}

inline std::vector<Series> plane_expansion(const PlaneImplicit& c, const ProjectivePoint& p, std::size_t n, Chart chart) {
  if (p.size() != 3) throw Error(ErrorKind::AmbientMismatch, "plane point needs three coordinates");
  if (c.form.evaluate(p.coords()) != 0) throw Error(ErrorKind::PointNotOnCurve, to_string(p) + " is not on the plane curve");
  const std::size_t k = p.chart();
  std::size_t a = (k + 1) % 3, b = (k + 2) % 3;
  if (a > b) std::swap(a, b);
  const auto grad = c.form.gradient();
  const bool da = grad[a].evaluate(p.coords()) != 0;
  const bool db = grad[b].evaluate(p.coords()) != 0;
  if (!da && !db) throw Error(ErrorKind::SingularPoint, "gradient vanishes at " + to_string(p));
  // parameter coordinate `param`, lifted coordinate `lifted`
  bool use_a_as_param = db;
  if (chart == Chart::Alternate && da && db) use_a_as_param = false;
  const std::size_t param = use_a_as_param ? a : b;
  const std::size_t lifted = use_a_as_param ? b : a;
  // G(w, t) = F with x_k = 1, x_param = p_param + t, x_lifted = w
  std::vector<MultiPoly> subs(3, MultiPoly(2));
  subs[k] = MultiPoly::constant(2, 1);
  subs[param] = MultiPoly::constant(2, p[param]) + MultiPoly::variable(2, 1);
  subs[lifted] = MultiPoly::variable(2, 0);
  const Series w = implicit_lift(c.form.substitute(subs), p[lifted], n);
  std::vector<Series> out(3, Series(n));
  out[k] = Series::constant(1, n);
  out[param] = Series::constant(p[param], n) + Series::variable(n);
  out[lifted] = w;
  if (chart == Chart::Alternate && !(da && db)) return reparametrize_all(std::move(out));
  return out;
}

inline std::vector<Series> hyperelliptic_expansion(const Hyperelliptic& h, int genus, const HyperPoint& p, std::size_t n) {
  if (h.f(p.x) != p.y_squared) throw Error(ErrorKind::PointNotOnCurve, "point does not satisfy y^2 = f(x)");
  std::vector<Series> out;
  const MultiPoly fx = MultiPoly::from_univariate(2, 0, h.f);
  if (p.is_weierstrass()) {
    // t = y; x(t) from f(x) = t^2, and dx/y = 2 dt / f'(x(t))
    const MultiPoly g = fx - MultiPoly::variable(2, 1).pow(2);
    const Series x = implicit_lift(g, p.x, n);
    const Series factor = compose(h.f.derivative(), x).inverse() * Rational(2);
    Series xi = Series::constant(1, n);
    for (int i = 0; i < genus; ++i) {
      out.push_back(xi * factor);
      xi = xi * x;
    }
    return out;
  }
  // t = x - a; y(t) = y(a) * u(t) with u^2 = f(a + t) / f(a), u(0) = 1
  const Polynomial shifted = h.f.shifted(p.x) * Rational(1 / p.y_squared);
  const MultiPoly g = MultiPoly::variable(2, 0).pow(2) - MultiPoly::from_univariate(2, 1, shifted);
  const Series u = implicit_lift(g, 1, n);
  // x^i dx / y in the trivialisation dt / y(a) (rational y) or dt / (sign * sqrt f(a))
  const Rational scale = p.y ? Rational(1 / *p.y) : Rational(p.sign);
  const Series inv = u.inverse() * scale;
  const Series x = Series::constant(p.x, n) + Series::variable(n);
  Series xi = Series::constant(1, n);
  for (int i = 0; i < genus; ++i) {
    out.push_back(xi * inv);
    xi = xi * x;
  }
  return out;
}

inline std::vector<Series> space_expansion(const SpaceImplicit& c, const ProjectivePoint& p, std::size_t n) {
  if (n > 2) throw Error(ErrorKind::UnsupportedMultiplicity, "space curves support jets of length at most 2");
  if (p.size() != c.r + 1) throw Error(ErrorKind::AmbientMismatch, "point has the wrong number of coordinates");
  Matrix jac(0, c.r + 1);
  for (const auto& e : c.equations) {
    if (e.evaluate(p.coords()) != 0) throw Error(ErrorKind::PointNotOnCurve, to_string(p) + " is not on the space curve");
    std::vector<Rational> row;
    for (const auto& d : e.gradient()) row.push_back(d.evaluate(p.coords()));
    jac.append_row(row);
  }
  if (rank(jac) != c.r - 1) throw Error(ErrorKind::SingularPoint, "Jacobian rank differs from r - 1 at " + to_string(p));
  // tangent direction: kernel of the Jacobian inside the affine chart x_k = 0
  std::vector<Rational> chart_row(c.r + 1);
  chart_row[p.chart()] = 1;
  jac.append_row(chart_row);
  const auto ker = kernel_basis(jac);
  if (ker.size() != 1) throw Error(ErrorKind::SingularPoint, "tangent direction is not unique at " + to_string(p));
  const ProjectivePoint dir(ker.front());
  std::vector<Series> out;
  for (std::size_t i = 0; i <= c.r; ++i) out.push_back(Series({p[i], dir[i]}, n));
  return out;
}

}  // namespace detail

/// Truncated local expansions (precision n) of the basis of `system` at `p`.
/// Each basis element is written in a local trivialisation and a local
/// parameter chosen by the engine; ranks of stacked jets do not depend on
/// either choice.
inline std::vector<Series> local_expansion(const Curve& curve, const LinearSystem& system, const CurvePoint& p,
                                           std::size_t n, Chart chart = Chart::Automatic) {
  system.check(curve);
  if (n == 0) throw Error(ErrorKind::UnsupportedMultiplicity, "multiplicity must be at least 1");
  if (const auto* nodal = std::get_if<NodalUnion>(&curve.representation())) {
    if (!p.component || *p.component >= nodal->components.size())
      throw Error(ErrorKind::InvalidInput, "points on a nodal union must name a valid component");
    CurvePoint local = p;
    local.component.reset();
    return local_expansion(nodal->components[*p.component], system, local, n, chart);
  }
  if (p.component) throw Error(ErrorKind::InvalidInput, "component index given for a curve that is not a nodal union");

  switch (curve.kind()) {
    case CurveKind::Parametric: {
      const auto* pv = std::get_if<ParamValue>(&p.where);
      if (!pv) throw Error(ErrorKind::InvalidInput, "parametric curves take parameter points");
      const std::size_t prec = std::max<std::size_t>(n, 2);
      auto out = detail::parametric_expansion(curve.as<ParametricRational>(), *pv, prec);
      if (detail::rank_of_rows(out, 2) < 2) throw Error(ErrorKind::SingularPoint, "parametrisation is not immersive at " + to_string(p));
      if (chart == Chart::Alternate) out = detail::reparametrize_all(std::move(out));
      for (auto& s : out) s = s.truncated(n);
      return out;
    }
    case CurveKind::Plane: {
      const auto* pp = std::get_if<PlanePoint>(&p.where);
      if (!pp) throw Error(ErrorKind::InvalidInput, "plane curves take homogeneous points");
      return detail::plane_expansion(curve.as<PlaneImplicit>(), pp->p, n, chart);
    }
    case CurveKind::Hyperelliptic: {
      const auto* hp = std::get_if<HyperPoint>(&p.where);
      if (!hp) throw Error(ErrorKind::InvalidInput, "hyperelliptic curves take (x, y) points");
      auto out = detail::hyperelliptic_expansion(curve.as<Hyperelliptic>(), *curve.genus(), *hp, n);
      if (chart == Chart::Alternate) out = detail::reparametrize_all(std::move(out));
      return out;
    }
    case CurveKind::Space: {
      const auto* sp = std::get_if<SpacePoint>(&p.where);
      if (!sp) throw Error(ErrorKind::InvalidInput, "space curves take homogeneous points");
      if (n > 2) throw Error(ErrorKind::UnsupportedMultiplicity, "space curves support jets of length at most 2");
      auto out = detail::space_expansion(curve.as<SpaceImplicit>(), sp->p, 2);
      for (auto& s : out) s = s.truncated(n);
      return out;
    }
    case CurveKind::Nodal: break;
  }
  throw Error(ErrorKind::InvalidInput, "unhandled curve kind");
}

/// m x dim V matrix; row j holds the t^j coefficients of the basis at p.
inline Matrix jet_block(const Curve& curve, const LinearSystem& system, const CurvePoint& p, unsigned m,
                        Chart chart = Chart::Automatic) {
  if (m == 0) throw Error(ErrorKind::UnsupportedMultiplicity, "multiplicity must be at least 1");
  const auto basis = local_expansion(curve, system, p, m, chart);
  Matrix out(m, basis.size());
  for (unsigned j = 0; j < m; ++j)
    for (std::size_t i = 0; i < basis.size(); ++i) out(j, i) = basis[i][j];
  return out;
}

/// The embedded tangent line at p as two points spanning it.
inline std::pair<ProjectivePoint, ProjectivePoint> tangent_line(const Curve& curve, const CurvePoint& p) {
  const Matrix block = jet_block(curve, LinearSystem::hyperplane(), p, 2);
  if (rank(block) < 2) throw Error(ErrorKind::SingularPoint, "no tangent line at " + to_string(p));
  std::vector<Rational> r0(block.row(0).begin(), block.row(0).end());
  std::vector<Rational> r1(block.row(1).begin(), block.row(1).end());
  return {ProjectivePoint(r0), ProjectivePoint(r1)};
}

/// Weierstrass points (root, 0) of a split model; affine only.
inline std::vector<CurvePoint> weierstrass_points(const Curve& curve) {
  const auto& h = curve.as<Hyperelliptic>();
  if (!h.roots) throw Error(ErrorKind::NotSplit, "curve was not constructed as split over Q");
  std::vector<CurvePoint> out;
  for (const auto& r : *h.roots) out.push_back(hyper_point_sqrt(curve, r, 0));
  return out;
}

/// Rational points of a plane curve of bounded height, in a deterministic order.
inline std::vector<CurvePoint> plane_rational_points(const Curve& curve, long height = kRationalSearchHeight) {
  const auto& f = curve.as<PlaneImplicit>().form;
  std::vector<Rational> values;
  for (long q = 1; q <= height; ++q)
    for (long p = -height; p <= height; ++p) {
      Rational v = make_rational(p, q);
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
  std::sort(values.begin(), values.end());
  std::vector<CurvePoint> out;
  auto add = [&](std::vector<Rational> c) {
    CurvePoint cp = plane_point(std::move(c));
    if (std::find(out.begin(), out.end(), cp) == out.end()) out.push_back(std::move(cp));
  };
  for (const auto& x : values) {
    const Polynomial py = f.restrict_to(1, {x, 0, 1});
    if (py.is_zero()) continue;
    std::vector<Rational> ys;
    try {
      ys = rational_roots(py);
    } catch (const Error&) {
      for (const auto& y : values)
        if (py(y) == 0) ys.push_back(y);
    }
    for (const auto& y : ys) add({x, y, 1});
  }
  // line at infinity z = 0: points (x : 1 : 0) and (1 : 0 : 0)
  const Polynomial px = f.restrict_to(0, {0, 1, 0});
  if (!px.is_zero()) {
    try {
      for (const auto& x : rational_roots(px)) add({x, 1, 0});
    } catch (const Error&) {
    }
  }
  if (f.evaluate({1, 0, 0}) == 0) add({1, 0, 0});
  return out;
}

/// Rational points of y^2 = f(x) with x of height <= `height` and f(x) != 0.
inline std::vector<CurvePoint> hyperelliptic_rational_points(const Curve& curve, long height = kRationalSearchHeight) {
  const auto& h = curve.as<Hyperelliptic>();
  std::vector<CurvePoint> out;
  for (long q = 1; q <= height; ++q)
    for (long p = -4 * height; p <= 4 * height; ++p) {
      const Rational x = make_rational(p, q);
      if (x.get_den() != q) continue;
      const Rational fx = h.f(x);
      if (fx == 0) continue;
      if (auto y = rational_sqrt(fx)) {
        out.push_back(hyper_point(curve, x, *y));
        out.push_back(hyper_point(curve, x, -*y));
      }
    }
  return out;
}

/// Deterministic seeded point for probes. Parametric: integer t in
/// [-kParamSampleRadius, kParamSampleRadius]. Hyperelliptic: x = p/q from the
/// kHyperSample window with a random ordinate sign (y rational when f(x) is a
/// square). Plane: one of the bounded-height rational points.
inline CurvePoint sample_point(const Curve& curve, std::uint64_t seed) {
  Rng rng(seed);
  switch (curve.kind()) {
    case CurveKind::Parametric:
      return param_point(make_rational(rng.uniform(-kParamSampleRadius, kParamSampleRadius)));
    case CurveKind::Hyperelliptic: {
      const auto& h = curve.as<Hyperelliptic>();
      for (int attempt = 0; attempt < 64; ++attempt) {
        const Rational x = rng.rational(kHyperSampleRadius, kHyperSampleMaxDenominator);
        const int sign = rng.coin() ? 1 : -1;
        if (h.f(x) != 0) return hyper_point_sqrt(curve, x, sign);
      }
      throw Error(ErrorKind::NoRationalPointFound, "no non-Weierstrass abscissa found");
    }
    case CurveKind::Plane: {
      const auto pts = plane_rational_points(curve);
      if (pts.empty()) throw Error(ErrorKind::NoRationalPointFound, "bounded search found no rational point");
      return pts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pts.size()) - 1))];
    }
    case CurveKind::Nodal: {
      const auto& comps = curve.as<NodalUnion>().components;
      const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(comps.size()) - 1));
      CurvePoint p = sample_point(comps[k], seed ^ 0x9e3779b97f4a7c15ULL);
      p.component = k;
      return p;
    }
    case CurveKind::Space: break;
  }
  throw Error(ErrorKind::PreconditionNotMet, "sampling is not supported on implicit space curves");
}

/// Strictly rational point on a hyperelliptic curve (bounded search).
inline CurvePoint sample_rational_point(const Curve& curve, std::uint64_t seed) {
  const auto pts = hyperelliptic_rational_points(curve);
  if (pts.empty()) throw Error(ErrorKind::NoRationalPointFound, "bounded search found no rational non-Weierstrass point");
  Rng rng(seed);
  return pts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pts.size()) - 1))];
}

}  // namespace terracini
