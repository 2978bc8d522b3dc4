#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "terracini/curve.hpp"
#include "terracini/error.hpp"
#include "terracini/jets.hpp"
#include "terracini/multipoly.hpp"
#include "terracini/random.hpp"
#include "terracini/terracini.hpp"

namespace terracini {

/// splitmix64 step; derives independent per-trial and per-point seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ProbeResult {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<std::uint64_t> failing_seeds;
  std::vector<Divisor> witnesses;  // one per failing seed
  std::vector<std::string> notes;  // one per failing seed

  [[nodiscard]] bool passed() const noexcept { return failures == 0; }
  [[nodiscard]] std::string verdict() const { return passed() ? "all-passed" : "counterexample-found"; }
};

/// x distinct seeded points; trial t of a probe with seed s uses mix_seed(s, t).
inline std::vector<CurvePoint> draw_points(const Curve& curve, std::size_t x, std::uint64_t trial_seed) {
  std::vector<CurvePoint> pts;
  for (std::uint64_t j = 0; pts.size() < x; ++j) {
    if (j > 64 * (x + 1)) throw Error(ErrorKind::NoRationalPointFound, "could not draw enough distinct points");
    CurvePoint p = sample_point(curve, mix_seed(trial_seed, j));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

/// Draws `trials` random S of size x and records every S with nonzero defect.
/// A planted divisor, when given, is tested first as trial 0.
inline ProbeResult emptiness_probe(const Curve& curve, const LinearSystem& system, std::size_t x, std::size_t trials,
                                   std::uint64_t seed, const std::optional<Divisor>& planted = std::nullopt) {
  ProbeResult out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    const Divisor d = (i == 0 && planted) ? *planted : Divisor::reduced(draw_points(curve, x, s));
    const TerraciniReport rep = defect_report(curve, system, d);
    ++out.trials;
    if (rep.defect != 0) {
      ++out.failures;
      out.failing_seeds.push_back(s);
      out.witnesses.push_back(d);
      out.notes.push_back("defect " + std::to_string(rep.defect) + (rep.member ? ", member" : ""));
    }
  }
  return out;
}

/// Z = sum e_i p_i at random support; checks dim V(-Z) = max(0, dim V - sum e_i).
inline ProbeResult generic_rank_probe(const Curve& curve, const LinearSystem& system, const std::vector<unsigned>& lengths,
                                      std::size_t trials, std::uint64_t seed) {
  ProbeResult out;
  const std::size_t dim = system.dim(curve);
  std::size_t total = 0;
  for (auto e : lengths) total += e;
  const std::size_t expected = total >= dim ? 0 : dim - total;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    const auto pts = draw_points(curve, lengths.size(), s);
    std::vector<Divisor::Entry> entries;
    for (std::size_t j = 0; j < pts.size(); ++j) entries.push_back({pts[j], lengths[j]});
    const Divisor z(std::move(entries));
    const std::size_t got = dim - rank(jet_matrix(curve, system, z));
    ++out.trials;
    if (got != expected) {
      ++out.failures;
      out.failing_seeds.push_back(s);
      out.witnesses.push_back(z);
      out.notes.push_back("dim V(-Z) = " + std::to_string(got) + ", expected " + std::to_string(expected));
    }
  }
  return out;
}

/// Canonical queries on a hyperelliptic curve, mixing Weierstrass points,
/// fibers of the double cover and random points; checks that the Riemann-Roch
/// dichotomy agrees with the rank criterion. Returns the member count through
/// `members` when given.
inline ProbeResult rr_dichotomy_probe(const Curve& curve, std::size_t trials, std::uint64_t seed,
                                      std::size_t* members = nullptr) {
  const int g = *curve.genus();
  const auto& h = curve.as<Hyperelliptic>();
  std::vector<CurvePoint> branch;
  if (h.roots) branch = weierstrass_points(curve);
  ProbeResult out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    Rng rng(s);
    const auto x = static_cast<std::size_t>(rng.uniform(1, g + 1));
    std::vector<CurvePoint> pts;
    for (std::uint64_t j = 0; pts.size() < x; ++j) {
      CurvePoint p;
      const long pick = rng.uniform(0, 2);
      if (pick == 0 && !branch.empty()) {
        p = branch[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(branch.size()) - 1))];
      } else if (pick == 1 && pts.size() + 2 <= x) {
        // both points of a fiber of the double cover
        CurvePoint a = sample_point(curve, mix_seed(s, 1000 + j));
        auto hp = std::get<HyperPoint>(a.where);
        CurvePoint b = hyper_point_sqrt(curve, hp.x, -hp.sign);
        if (std::find(pts.begin(), pts.end(), a) == pts.end() && std::find(pts.begin(), pts.end(), b) == pts.end()) {
          pts.push_back(a);
          pts.push_back(b);
        }
        continue;
      } else {
        p = sample_point(curve, mix_seed(s, j));
      }
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const Divisor d = Divisor::reduced(pts);
    ++out.trials;
    try {
      const CanonicalMembership m = canonical_membership(curve, d);
      if (members && m.member) ++*members;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SelfVerificationFailed) throw;
      ++out.failures;
      out.failing_seeds.push_back(s);
      out.witnesses.push_back(d);
      out.notes.push_back(e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coplanar tangent lines of a rational space curve

inline double evaluate_double(const MultiPoly& p, const std::vector<double>& point) {
  double acc = 0;
  for (const auto& [e, c] : p.terms()) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(point[i], static_cast<int>(e[i]));
    acc += term;
  }
  return acc;
}

struct CoplanarLocus {
  MultiPoly d;        // in (s, t)
  unsigned k = 0;     // D = (s - t)^k * reduced
  MultiPoly reduced;
  std::vector<std::pair<Rational, Rational>> exact_zeros;  // s < t, each verified as a member
  std::vector<std::pair<double, double>> hints;            // sign changes of reduced(s, .) on a float grid
};

/// Divides out the largest power of (s - t) from a bivariate polynomial.
inline std::pair<MultiPoly, unsigned> strip_diagonal(const MultiPoly& d) {
  if (d.is_zero()) return {d, 0};
  const auto s = MultiPoly::variable(2, 0), t = MultiPoly::variable(2, 1);
  const MultiPoly shifted = d.substitute({s + t, t});
  unsigned k = UINT32_MAX;
  for (const auto& [e, c] : shifted.terms()) k = std::min(k, e[0]);
  MultiPoly lowered(2);
  for (const auto& [e, c] : shifted.terms()) lowered.add_term({e[0] - k, e[1]}, c);
  return {lowered.substitute({s - t, t}), k};
}

/// D(s, t) = det(phi(s), phi'(s), phi(t), phi'(t)) for a parametrised curve in
/// P^3, its diagonal order and rational zeros of D / (s - t)^k of bounded height.
inline CoplanarLocus coplanar_tangent_locus(const Curve& curve, long height = 6, long max_den = 3) {
  if (!curve.is<ParametricRational>() || curve.ambient() != 3)
    throw Error(ErrorKind::NotSpaceCurve, "coplanar_tangent_locus needs a parametrised curve in P^3");
  const auto& coords = curve.as<ParametricRational>().coords;
  std::vector<std::vector<MultiPoly>> m(4, std::vector<MultiPoly>(4));
  for (std::size_t j = 0; j < 4; ++j) {
    m[0][j] = MultiPoly::from_univariate(2, 0, coords[j]);
    m[1][j] = MultiPoly::from_univariate(2, 0, coords[j].derivative());
    m[2][j] = MultiPoly::from_univariate(2, 1, coords[j]);
    m[3][j] = MultiPoly::from_univariate(2, 1, coords[j].derivative());
  }
  CoplanarLocus out;
  out.d = determinant(m, 2);
  std::tie(out.reduced, out.k) = strip_diagonal(out.d);

  std::vector<Rational> values;
  for (long q = 1; q <= max_den; ++q)
    for (long p = -height * q; p <= height * q; ++p) {
      const Rational v = make_rational(p, q);
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (out.reduced.evaluate({values[i], values[j]}) != 0) continue;
      const Divisor s = Divisor::reduced({param_point(values[i]), param_point(values[j])});
      const TerraciniReport rep = defect_report(curve, LinearSystem::hyperplane(), s);
      if (!rep.member)
        throw Error(ErrorKind::SelfVerificationFailed, "coplanar tangents at " + to_string(s) + " but not a member");
      out.exact_zeros.emplace_back(values[i], values[j]);
    }

  // float hints only; never fed into a verdict
  const auto lo = static_cast<double>(-height), hi = static_cast<double>(height);
  const double step = 0.05;
  for (long i = -height; i <= height && out.hints.size() < 32; ++i) {
    const auto s = static_cast<double>(i);
    double prev = evaluate_double(out.reduced, {s, lo});
    for (double t = lo + step; t <= hi; t += step) {
      const double cur = evaluate_double(out.reduced, {s, t});
      if ((prev < 0) != (cur < 0) && std::abs(t - s) > step) out.hints.emplace_back(s, t - step / 2);
      prev = cur;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weierstrass subsets on split hyperelliptic curves

struct SubsetRow {
  Divisor s;
  bool mixed = false;  // contains a fiber pair
  std::size_t e = 0;
  std::size_t f = 0;
  std::optional<long> predicted_h0;  // g - 2x + e + f, for x <= g - 1
  std::optional<long> corrected_h0;  // g - 2x + e + 2f
  long actual_h0 = 0;
  bool member = false;
  std::optional<bool> agrees;
};

struct SubsetSuite {
  int g = 0;
  std::size_t x = 0;
  std::vector<SubsetRow> rows;
  std::size_t members = 0;
  std::size_t weierstrass_disagreements = 0;
  std::size_t fiber_disagreements = 0;
};

struct SuiteCaps {
  int max_genus = 4;
  std::size_t max_x = 4;
};

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Every x-subset of the affine Weierstrass points, plus (with a fiber pair)
/// the pair joined with every (x - 2)-subset. Rows compare the combinatorial
/// prediction with linear algebra when x <= g - 1.
inline SubsetSuite weierstrass_subset_suite(const Curve& curve, std::size_t x,
                                            const std::optional<std::pair<CurvePoint, CurvePoint>>& fiber = std::nullopt,
                                            SuiteCaps caps = {}) {
  const int g = *curve.genus();
  if (g > caps.max_genus || x > caps.max_x)
    throw Error(ErrorKind::PreconditionNotMet, "enumeration cap exceeded (genus " + std::to_string(caps.max_genus) + ", x " +
                                                   std::to_string(caps.max_x) + "); raise the caps explicitly");
  const auto branch = weierstrass_points(curve);
  SubsetSuite out;
  out.g = g;
  out.x = x;
  auto run = [&](std::vector<CurvePoint> pts, bool mixed) {
    SubsetRow row;
    row.s = Divisor::reduced(pts);
    row.mixed = mixed;
    if (static_cast<long>(x) <= g - 1) {
      const OracleFinding o = hyperelliptic_oracle(curve, row.s);
      row.e = o.e;
      row.f = o.f;
      row.predicted_h0 = o.predicted_h0;
      row.corrected_h0 = o.corrected_h0;
      row.actual_h0 = o.actual_h0;
      row.member = o.actual_member;
      row.agrees = o.agrees;
      if (!o.agrees) ++(mixed ? out.fiber_disagreements : out.weierstrass_disagreements);
    } else {
      const TerraciniReport rep = defect_report(curve, LinearSystem::canonical(), row.s);
      row.e = mixed ? x - 2 : x;
      row.f = mixed ? 1 : 0;
      row.actual_h0 = static_cast<long>(rep.h0_V_minus_2S);
      row.member = rep.member;
    }
    if (row.member) ++out.members;
    out.rows.push_back(std::move(row));
  };
  for_each_subset(branch.size(), x, [&](const std::vector<std::size_t>& idx) {
    std::vector<CurvePoint> pts;
    for (auto i : idx) pts.push_back(branch[i]);
    run(std::move(pts), false);
  });
  if (fiber && x >= 2) {
    for_each_subset(branch.size(), x - 2, [&](const std::vector<std::size_t>& idx) {
      std::vector<CurvePoint> pts{fiber->first, fiber->second};
      for (auto i : idx) pts.push_back(branch[i]);
      run(std::move(pts), true);
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bitangents and hyperflexes of plane curves

struct BitangentFinding {
  std::string kind;  // "bitangent" or "hyperflex"
  ProjectivePoint line;  // coefficients (a : b : c) of ax + by + cz = 0
  Divisor s;
  TerraciniReport report;
};

struct BitangentHint {
  double x = 0, y = 0;  // affine point (z = 1) whose tangent line nearly touches again
  double gap = 0;       // distance between the two closest residual roots
};

struct BitangentSearch {
  std::vector<BitangentFinding> findings;
  std::vector<BitangentHint> hints;
};

namespace detail {

/// Order of vanishing of F(p + lambda q) at lambda = 0.
inline int contact_order(const MultiPoly& f, const ProjectivePoint& p, const std::vector<Rational>& q) {
  std::vector<MultiPoly> subs;
  for (std::size_t i = 0; i < 3; ++i)
    subs.push_back(MultiPoly::constant(1, p[i]) + MultiPoly::variable(1, 0) * q[i]);
  const Polynomial u = f.substitute(subs).restrict_to(0, {0});
  if (u.is_zero()) return -1;  // the line is a component
  int k = 0;
  while (u.coeff(static_cast<std::size_t>(k)) == 0) ++k;
  return k;
}

inline std::vector<std::complex<double>> complex_roots(std::vector<double> c) {
  while (!c.empty() && std::abs(c.back()) < 1e-14) c.pop_back();
  const std::size_t n = c.empty() ? 0 : c.size() - 1;
  if (n == 0) return {};
  std::vector<std::complex<double>> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(std::complex<double>(0.4, 0.9), static_cast<int>(i));
  auto eval = [&](std::complex<double> v) {
    std::complex<double> acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
    return acc / c.back();
  };
  for (int it = 0; it < 500; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= eval(z[i]) / den;
    }
  }
  return z;
}

}  // namespace detail

/// Exact part: rational points of bounded height grouped by tangent line;
/// pairs sharing a line are confirmed with defect_report (rank <= 2), points
/// of contact >= 4 with scheme_report(2p). Float part: `trials` random real
/// points whose tangent line has a nearly double residual intersection.
inline BitangentSearch bitangent_search(const Curve& curve, std::size_t trials, std::uint64_t seed, long height = 8) {
  const MultiPoly& f = curve.as<PlaneImplicit>().form;
  const auto sys = LinearSystem::hyperplane();
  BitangentSearch out;
  std::map<std::vector<Rational>, std::vector<CurvePoint>> by_line;
  std::vector<std::vector<Rational>> order;
  for (const auto& p : plane_rational_points(curve, height)) {
    const auto& pp = std::get<PlanePoint>(p.where).p;
    std::vector<Rational> grad;
    for (const auto& d : f.gradient()) grad.push_back(d.evaluate(pp.coords()));
    if (std::all_of(grad.begin(), grad.end(), [](const Rational& v) { return v == 0; })) continue;
    const ProjectivePoint line(grad);
    if (!by_line.count(line.coords())) order.push_back(line.coords());
    by_line[line.coords()].push_back(p);
    if (f.total_degree() >= 4) {
      const auto kernel = kernel_basis(Matrix{{grad[0], grad[1], grad[2]}});
      std::vector<Rational> q = kernel[0];
      if (ProjectivePoint(q) == pp) q = kernel[1];
      const int order_of_contact = detail::contact_order(f, pp, q);
      if (order_of_contact >= 4) {
        const Divisor z({{p, 2}});
        const TerraciniReport rep = scheme_report(curve, sys, z);
        if (!rep.member_scheme) throw Error(ErrorKind::SelfVerificationFailed, "hyperflex at " + to_string(p) + " is not a scheme member");
        out.findings.push_back({"hyperflex", line, z, rep});
      }
    }
  }
  for (const auto& key : order) {
    const auto& pts = by_line[key];
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Divisor s = Divisor::reduced({pts[i], pts[j]});
        const TerraciniReport rep = defect_report(curve, sys, s);
        if (rep.rank > 2) throw Error(ErrorKind::SelfVerificationFailed, "shared tangent line but rank > 2 at " + to_string(s));
        out.findings.push_back({"bitangent", ProjectivePoint(key), s, rep});
      }
  }

  Rng rng(seed);
  const int d = f.total_degree();
  const auto grad = f.gradient();
  for (std::size_t trial = 0; trial < trials && d >= 4; ++trial) {
    const double x0 = static_cast<double>(rng.uniform(-3000, 3000)) / 1000.0;
    std::vector<double> cy(static_cast<std::size_t>(d) + 1);
    for (const auto& [e, c] : f.terms()) cy[e[1]] += c.get_d() * std::pow(x0, static_cast<int>(e[0]));
    for (const auto& y : detail::complex_roots(cy)) {
      if (std::abs(y.imag()) > 1e-9) continue;
      const double y0 = y.real();
      const double a = evaluate_double(grad[0], {x0, y0, 1});
      const double b = evaluate_double(grad[1], {x0, y0, 1});
      if (std::abs(b) < 1e-9) continue;
      // tangent line y = y0 + m (x - x0); residual roots of F along it
      const double m = -a / b;
      std::vector<double> res(static_cast<std::size_t>(d) + 1);
      for (const auto& [e, coef] : f.terms()) {
        // F(x0 + u, y0 + m u, 1), term by term
        std::vector<double> px{1}, py{1};
        for (unsigned k = 0; k < e[0]; ++k) {
          std::vector<double> n(px.size() + 1);
          for (std::size_t t = 0; t < px.size(); ++t) {
            n[t] += px[t] * x0;
            n[t + 1] += px[t];
          }
          px = n;
        }
        for (unsigned k = 0; k < e[1]; ++k) {
          std::vector<double> n(py.size() + 1);
          for (std::size_t t = 0; t < py.size(); ++t) {
            n[t] += py[t] * y0;
            n[t + 1] += py[t] * m;
          }
          py = n;
        }
        for (std::size_t s = 0; s < px.size(); ++s)
          for (std::size_t t = 0; t < py.size(); ++t) res[s + t] += coef.get_d() * px[s] * py[t];
      }
      // u^2 divides the exact residual; drop the double root at u = 0
      std::vector<double> tail(res.begin() + 2, res.end());
      const auto roots = detail::complex_roots(tail);
      double gap = 1e300;
      for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) gap = std::min(gap, std::abs(roots[i] - roots[j]));
      if (gap < 1e-2) out.hints.push_back({x0, y0, gap});
    }
  }
  return out;
}

}  // namespace terracini
