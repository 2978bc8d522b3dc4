#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "terracini/error.hpp"
#include "terracini/matrix.hpp"
#include "terracini/multipoly.hpp"
#include "terracini/polynomial.hpp"
#include "terracini/rational.hpp"

namespace terracini {

/// Homogeneous coordinates normalised so the first nonzero entry is 1.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  explicit ProjectivePoint(std::vector<Rational> coords) : c_(std::move(coords)) {
    auto it = std::find_if(c_.begin(), c_.end(), [](const Rational& v) { return v != 0; });
    if (it == c_.end()) throw Error(ErrorKind::InvalidInput, "projective point with all coordinates zero");
    const Rational inv = 1 / *it;
    for (auto& v : c_) v *= inv;
  }

  [[nodiscard]] const std::vector<Rational>& coords() const noexcept { return c_; }
  [[nodiscard]] std::size_t size() const noexcept { return c_.size(); }
  [[nodiscard]] const Rational& operator[](std::size_t i) const { return c_.at(i); }
  /// Index of the first nonzero coordinate (which equals 1).
  [[nodiscard]] std::size_t chart() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return 0;
  }

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  std::vector<Rational> c_;
};

inline std::string to_string(const ProjectivePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + to_string(p[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// Curve representations

struct ParametricRational {
  std::size_t r = 0;
  std::vector<Polynomial> coords;  // r + 1 polynomials in t
};

struct PlaneImplicit {
  MultiPoly form;  // homogeneous in (x, y, z)
};

struct Hyperelliptic {
  Polynomial f;                                 // y^2 = f(x)
  std::optional<std::vector<Rational>> roots;  // present iff f splits over Q
};

struct SpaceImplicit {
  std::size_t r = 0;
  std::vector<MultiPoly> equations;  // homogeneous in r + 1 variables
};

class Curve;

struct NodalUnion {
  std::size_t r = 0;
  std::vector<Curve> components;
};

enum class CurveKind { Parametric, Plane, Hyperelliptic, Space, Nodal };

inline std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Parametric: return "parametric";
    case CurveKind::Plane: return "plane";
    case CurveKind::Hyperelliptic: return "hyperelliptic";
    case CurveKind::Space: return "space";
    case CurveKind::Nodal: return "nodal";
  }
  return "unknown";
}

/// An immutable, validated curve. Construct through the make_* functions.
class Curve {
 public:
  using Representation = std::variant<ParametricRational, PlaneImplicit, Hyperelliptic, SpaceImplicit, NodalUnion>;

  [[nodiscard]] CurveKind kind() const { return static_cast<CurveKind>(rep_.index()); }
  [[nodiscard]] const Representation& representation() const noexcept { return rep_; }
  template <class T>
  [[nodiscard]] const T& as() const {
    if (const T* p = std::get_if<T>(&rep_)) return *p;
    throw Error(ErrorKind::InvalidInput, "curve is not of the requested representation");
  }
  template <class T>
  [[nodiscard]] bool is() const noexcept {
    return std::holds_alternative<T>(rep_);
  }

  /// Ambient projective dimension of the embedding (g - 1 for the canonical
  /// target of a hyperelliptic curve).
  [[nodiscard]] std::size_t ambient() const noexcept { return ambient_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] std::optional<int> genus() const noexcept { return genus_; }
  [[nodiscard]] const std::string& id() const noexcept { return id_; }

  Curve with_id(std::string id) const {
    Curve c = *this;
    c.id_ = std::move(id);
    return c;
  }

 private:
  friend Curve make_parametric(std::vector<Polynomial>, std::string);
  friend Curve make_plane(MultiPoly, std::string);
  friend Curve make_hyperelliptic(Polynomial, bool, std::string);
  friend Curve make_space(std::size_t, std::vector<MultiPoly>, std::string);
  friend Curve make_split_hyperelliptic(const std::vector<Rational>&, const Rational&, std::string);
  friend Curve make_nodal(std::vector<Curve>, std::string);

  Curve(Representation rep, std::size_t ambient, int degree, std::optional<int> genus, std::string id)
      : rep_(std::move(rep)), ambient_(ambient), degree_(degree), genus_(genus), id_(std::move(id)) {}

  Representation rep_;
  std::size_t ambient_ = 0;
  int degree_ = 0;
  std::optional<int> genus_;
  std::string id_;
};

/// Rational roots of p (without multiplicity), by the rational root test on
/// the integer-normalised polynomial. Divisor enumeration is bounded.
inline std::vector<Rational> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<Rational> roots;
  std::vector<Rational> c = p.coefficients();
  std::size_t shift = 0;
  while (c[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  if (c.size() <= 1) return roots;
  Integer lcm_den = 1;
  for (const auto& v : c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& v : c) ic.push_back(Integer(v * lcm_den));
  auto divisors = [](Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    Integer d = 1;
    Integer limit;
    mpz_sqrt(limit.get_mpz_t(), n.get_mpz_t());
    if (limit > 20000000) throw Error(ErrorKind::InvalidInput, "coefficient too large for rational root enumeration");
    for (; d <= limit; ++d) {
      if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
        small.push_back(d);
        Integer q = n / d;
        if (q != d) large.push_back(q);
      }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
  };
  const auto num_div = divisors(ic.front());
  const auto den_div = divisors(ic.back());
  const Polynomial reduced(c);
  for (const auto& a : num_div)
    for (const auto& b : den_div)
      for (int s : {1, -1}) {
        const Rational cand = make_rational(Integer(a * s), b);
        if (reduced(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline Curve make_parametric(std::vector<Polynomial> coords, std::string id = {}) {
  if (coords.size() < 2) throw Error(ErrorKind::AmbientMismatch, "a parametric curve needs at least two coordinates");
  Polynomial common;
  int degree = 0;
  for (const auto& p : coords) {
    common = gcd(common, p);
    degree = std::max(degree, p.degree());
  }
  if (common.is_zero()) throw Error(ErrorKind::BadDegree, "all coordinates are zero");
  if (common.degree() > 0) throw Error(ErrorKind::CommonFactor, "coordinates share the factor " + to_string(common));
  if (degree < 1) throw Error(ErrorKind::BadDegree, "constant parametrisation");
  const std::size_t r = coords.size() - 1;
  return Curve(ParametricRational{r, std::move(coords)}, r, degree, 0, std::move(id));
}

inline Curve make_plane(MultiPoly form, std::string id = {}) {
  if (form.nvars() != 3) throw Error(ErrorKind::AmbientMismatch, "a plane curve is a form in three variables");
  if (form.is_zero() || !form.is_homogeneous()) throw Error(ErrorKind::BadDegree, "plane curve equation must be a nonzero form");
  const int d = form.total_degree();
  if (d < 1) throw Error(ErrorKind::BadDegree, "plane curve of degree 0");
  return Curve(PlaneImplicit{std::move(form)}, 2, d, (d - 1) * (d - 2) / 2, std::move(id));
}

/// y^2 = f(x) with f squarefree of degree 2g+1 or 2g+2, g >= 2. With `split`
/// set, f must factor into rational linear factors.
inline Curve make_hyperelliptic(Polynomial f, bool split = false, std::string id = {}) {
  if (!is_squarefree(f)) throw Error(ErrorKind::NonSquarefree, "f = " + to_string(f, "x") + " is not squarefree");
  const int deg = f.degree();
  const int g = (deg - 1) / 2;
  if (g < 2) throw Error(ErrorKind::BadDegree, "deg f = " + std::to_string(deg) + " gives genus < 2");
  std::optional<std::vector<Rational>> roots;
  if (split) {
    auto rr = rational_roots(f);
    if (static_cast<int>(rr.size()) != deg) throw Error(ErrorKind::NotSplit, "f does not split over Q");
    roots = std::move(rr);
  }
  return Curve(Hyperelliptic{std::move(f), std::move(roots)}, static_cast<std::size_t>(g - 1), deg, g, std::move(id));
}

/// Split model y^2 = leading * prod (x - root_i); roots are taken as given.
inline Curve make_split_hyperelliptic(const std::vector<Rational>& roots, const Rational& leading = 1, std::string id = {}) {
  if (leading == 0) throw Error(ErrorKind::BadDegree, "zero leading coefficient");
  Curve c = make_hyperelliptic(Polynomial::from_roots(roots) * leading, false, std::move(id));
  auto& h = std::get<Hyperelliptic>(c.rep_);
  h.roots = roots;
  std::sort(h.roots->begin(), h.roots->end());
  return c;
}

inline Curve make_space(std::size_t r, std::vector<MultiPoly> equations, std::string id = {}) {
  if (r < 3) throw Error(ErrorKind::AmbientMismatch, "space curves live in P^r with r >= 3");
  if (equations.size() + 1 < r) throw Error(ErrorKind::BadDegree, "need at least r - 1 equations to cut a curve");
  int degree = 1;
  for (const auto& e : equations) {
    if (e.nvars() != r + 1) throw Error(ErrorKind::AmbientMismatch, "equation variable count differs from r + 1");
    if (e.is_zero() || !e.is_homogeneous()) throw Error(ErrorKind::BadDegree, "space curve equations must be nonzero forms");
    degree *= e.total_degree();
  }
  // degree metadata assumes a complete intersection
  return Curve(SpaceImplicit{r, std::move(equations)}, r, degree, std::nullopt, std::move(id));
}

inline Curve make_nodal(std::vector<Curve> components, std::string id = {}) {
  if (components.empty()) throw Error(ErrorKind::InvalidInput, "nodal union without components");
  const std::size_t r = components.front().ambient();
  int degree = 0;
  for (const auto& c : components) {
    if (c.is<Hyperelliptic>() || c.is<NodalUnion>())
      throw Error(ErrorKind::AmbientMismatch, "nodal union components must be embedded curves");
    if (c.ambient() != r) throw Error(ErrorKind::AmbientMismatch, "components live in different ambient spaces");
    degree += c.degree();
  }
  return Curve(NodalUnion{r, std::move(components)}, r, degree, std::nullopt, std::move(id));
}

// ---------------------------------------------------------------------------
// Points

struct ParamValue {
  Rational t;
  bool at_infinity = false;
  friend bool operator==(const ParamValue&, const ParamValue&) = default;
};

/// Affine point of y^2 = f(x). The ordinate is sign * sqrt(y_squared); it is
/// rational exactly when `y` is set. sign == 0 marks a Weierstrass point.
struct HyperPoint {
  Rational x;
  Rational y_squared;
  int sign = 0;
  std::optional<Rational> y;

  [[nodiscard]] bool is_weierstrass() const noexcept { return sign == 0; }
  friend bool operator==(const HyperPoint& a, const HyperPoint& b) { return a.x == b.x && a.sign == b.sign; }
};

struct PlanePoint {
  ProjectivePoint p;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct SpacePoint {
  ProjectivePoint p;
  friend bool operator==(const SpacePoint&, const SpacePoint&) = default;
};

struct CurvePoint {
  std::variant<ParamValue, HyperPoint, PlanePoint, SpacePoint> where;
  std::optional<std::size_t> component;  // set iff the curve is a NodalUnion

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

inline CurvePoint param_point(const Rational& t, std::optional<std::size_t> component = std::nullopt) {
  return {ParamValue{t, false}, component};
}
inline CurvePoint param_infinity(std::optional<std::size_t> component = std::nullopt) {
  return {ParamValue{0, true}, component};
}
inline CurvePoint plane_point(std::vector<Rational> coords) { return {PlanePoint{ProjectivePoint(std::move(coords))}, {}}; }
inline CurvePoint space_point(std::vector<Rational> coords, std::optional<std::size_t> component = std::nullopt) {
  return {SpacePoint{ProjectivePoint(std::move(coords))}, component};
}

/// Point (x, y) with rational y; validated against the curve.
inline CurvePoint hyper_point(const Curve& curve, const Rational& x, const Rational& y) {
  const auto& h = curve.as<Hyperelliptic>();
  const Rational fx = h.f(x);
  if (y * y != fx) throw Error(ErrorKind::PointNotOnCurve, "y^2 != f(x) at x = " + to_string(x));
  return {HyperPoint{x, fx, sgn(y), y}, {}};
}

/// Point (x, sign * sqrt(f(x))); sign is ignored (and the point is Weierstrass)
/// when f(x) = 0. The ordinate may be irrational.
inline CurvePoint hyper_point_sqrt(const Curve& curve, const Rational& x, int sign) {
  const auto& h = curve.as<Hyperelliptic>();
  const Rational fx = h.f(x);
  if (fx == 0) return {HyperPoint{x, 0, 0, Rational(0)}, {}};
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidInput, "ordinate sign must be +1 or -1");
  HyperPoint p{x, fx, sign, std::nullopt};
  if (auto root = rational_sqrt(fx)) p.y = *root * sign;
  return {p, {}};
}

inline std::string to_string(const CurvePoint& p) {
  std::string s;
  if (p.component) s = std::to_string(*p.component) + "@";
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ParamValue>) {
          s += w.at_infinity ? "t=inf" : "t=" + to_string(w.t);
        } else if constexpr (std::is_same_v<T, HyperPoint>) {
          s += "(" + to_string(w.x) + ", ";
          if (w.y) s += to_string(*w.y);
          else s += std::string(w.sign > 0 ? "+" : "-") + "sqrt(" + to_string(w.y_squared) + ")";
          s += ")";
        } else {
          s += to_string(w.p);
        }
      },
      p.where);
  return s;
}

/// Finite formal sum of distinct curve points with positive multiplicities.
class Divisor {
 public:
  struct Entry {
    CurvePoint point;
    unsigned multiplicity = 1;
  };

  Divisor() = default;
  explicit Divisor(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].multiplicity == 0) throw Error(ErrorKind::InvalidInput, "divisor multiplicities must be positive");
      for (std::size_t j = 0; j < i; ++j)
        if (entries_[i].point == entries_[j].point)
          throw Error(ErrorKind::InvalidInput, "divisor repeats the point " + to_string(entries_[i].point));
    }
  }
  /// Reduced divisor: every point with multiplicity 1.
  static Divisor reduced(const std::vector<CurvePoint>& points) {
    std::vector<Entry> e;
    for (const auto& p : points) e.push_back({p, 1});
    return Divisor(std::move(e));
  }

  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] unsigned degree() const {
    unsigned d = 0;
    for (const auto& e : entries_) d += e.multiplicity;
    return d;
  }
  [[nodiscard]] bool is_reduced() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.multiplicity == 1; });
  }
  [[nodiscard]] Divisor doubled() const {
    Divisor d = *this;
    for (auto& e : d.entries_) e.multiplicity *= 2;
    return d;
  }
  [[nodiscard]] Divisor plus(const CurvePoint& p, unsigned multiplicity = 1) const {
    std::vector<Entry> e = entries_;
    e.push_back({p, multiplicity});
    return Divisor(std::move(e));
  }

 private:
  std::vector<Entry> entries_;
};

inline std::string to_string(const Divisor& d) {
  std::string s;
  for (const auto& e : d.entries()) {
    if (!s.empty()) s += " + ";
    if (e.multiplicity != 1) s += std::to_string(e.multiplicity) + "*";
    s += to_string(e.point);
  }
  return s.empty() ? "0" : s;
}

}  // namespace terracini
