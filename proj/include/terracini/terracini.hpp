#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "terracini/curve.hpp"
#include "terracini/error.hpp"
#include "terracini/jets.hpp"
#include "terracini/matrix.hpp"

namespace terracini {

/// Rank bookkeeping for one (curve, system, S) query.
///
///   h0_V_minus_2S = dim V - rank
///   defect        = dim V(-2S) - dim V + 2x = 2x - rank
///   member        = rank < dim V && rank < 2x
///   member_scheme = rank <= 2x - 1 && rank < dim V
///
/// The scheme reading takes "<2Z> nonempty" to mean V(-2Z) != 0, i.e. the
/// same first clause as for reduced sets.
struct TerraciniReport {
  std::size_t x = 0;
  std::size_t dim_V = 0;
  std::size_t rank = 0;
  std::size_t h0_V_minus_2S = 0;
  long defect = 0;
  long span_dim = -1;
  bool member = false;
  bool member_scheme = false;

  friend bool operator==(const TerraciniReport&, const TerraciniReport&) = default;
};

inline TerraciniReport make_report(std::size_t x, std::size_t dim_V, std::size_t rank) {
  TerraciniReport r;
  r.x = x;
  r.dim_V = dim_V;
  r.rank = rank;
  r.h0_V_minus_2S = dim_V - rank;
  r.defect = static_cast<long>(2 * x) - static_cast<long>(rank);
  r.span_dim = static_cast<long>(rank) - 1;
  r.member = rank < dim_V && rank < 2 * x;
  r.member_scheme = x >= 1 && rank + 1 <= 2 * x && rank < dim_V;
  // defect = dim V(-2S) - dim V + 2x, recomputed from the other fields
  if (r.defect != static_cast<long>(r.h0_V_minus_2S) - static_cast<long>(dim_V) + static_cast<long>(2 * x))
    throw Error(ErrorKind::SelfVerificationFailed, "report bookkeeping mismatch");
  return r;
}

/// Vertical stack of jet blocks over the entries of z; deg z rows.
inline Matrix jet_matrix(const Curve& curve, const LinearSystem& system, const Divisor& z, Chart chart = Chart::Automatic) {
  Matrix m(0, system.dim(curve));
  for (const auto& e : z.entries()) m.append_rows(jet_block(curve, system, e.point, e.multiplicity, chart));
  return m;
}

inline TerraciniReport defect_report(const Curve& curve, const LinearSystem& system, const Divisor& s) {
  if (!s.is_reduced()) throw Error(ErrorKind::NonReducedInput, "defect_report takes a reduced set; use scheme_report");
  const Matrix m = jet_matrix(curve, system, s.doubled());
  return make_report(s.degree(), system.dim(curve), rank(m));
}

/// Scheme variant: Z may be non-reduced; x = deg Z and 2Z doubles every
/// multiplicity.
inline TerraciniReport scheme_report(const Curve& curve, const LinearSystem& system, const Divisor& z) {
  const Matrix m = jet_matrix(curve, system, z.doubled());
  return make_report(z.degree(), system.dim(curve), rank(m));
}

namespace detail {
inline void require_canonical_query(const Curve& curve, const Divisor& s) {
  if (!curve.is<Hyperelliptic>()) throw Error(ErrorKind::UnsupportedSystem, "canonical queries need a hyperelliptic curve");
  if (!s.is_reduced()) throw Error(ErrorKind::NonReducedInput, "canonical queries take reduced sets");
}
}  // namespace detail

/// h^0(2S) = 2x - g + 1 + h^0(K - 2S), with h^0(K - 2S) read off the
/// canonical report.
inline long rr_h0(const Curve& curve, const Divisor& s, const TerraciniReport& canonical) {
  detail::require_canonical_query(curve, s);
  const long g = *curve.genus();
  return 2 * static_cast<long>(s.degree()) - g + 1 + static_cast<long>(canonical.h0_V_minus_2S);
}

inline long rr_h0(const Curve& curve, const Divisor& s) {
  return rr_h0(curve, s, defect_report(curve, LinearSystem::canonical(), s));
}

enum class RRBranch { SmallDegree, Special };  // 2x < g  /  2x >= g

struct CanonicalMembership {
  bool member = false;
  RRBranch branch = RRBranch::SmallDegree;
  long h0_2S = 0;
  long h0_K_minus_2S = 0;
};

/// Membership through the Riemann-Roch dichotomy: for 2x < g, member iff
/// h^0(2S) > 1; for 2x >= g, member iff h^0(K - 2S) > 0. Throws
/// SelfVerificationFailed if this disagrees with the rank criterion.
inline CanonicalMembership canonical_membership(const Curve& curve, const Divisor& s) {
  detail::require_canonical_query(curve, s);
  const TerraciniReport rep = defect_report(curve, LinearSystem::canonical(), s);
  const long g = *curve.genus();
  const long x = static_cast<long>(s.degree());
  CanonicalMembership out;
  out.h0_K_minus_2S = static_cast<long>(rep.h0_V_minus_2S);
  out.h0_2S = rr_h0(curve, s, rep);
  if (2 * x < g) {
    out.branch = RRBranch::SmallDegree;
    out.member = out.h0_2S > 1;
  } else {
    out.branch = RRBranch::Special;
    out.member = out.h0_K_minus_2S > 0;
  }
  if (out.member != rep.member)
    throw Error(ErrorKind::SelfVerificationFailed, "Riemann-Roch dichotomy disagrees with the rank criterion for S = " + to_string(s));
  return out;
}

struct OracleFinding {
  std::size_t e = 0;  // points of S that are Weierstrass points
  std::size_t f = 0;  // pairs {p, q} in S with equal abscissa, p != q
  long predicted_h0 = 0;   // g - 2x + e + f
  long corrected_h0 = 0;   // g - 2x + e + 2f: fiber pairs impose 2 conditions, not 3
  bool membership_predicted = false;
  long actual_h0 = 0;
  bool actual_member = false;
  bool agrees = false;
};

/// Combinatorial prediction of h^0(K - 2S) on a hyperelliptic curve compared
/// against linear algebra. Disagreements are reported, never corrected.
inline OracleFinding hyperelliptic_oracle(const Curve& curve, const Divisor& s) {
  detail::require_canonical_query(curve, s);
  const long g = *curve.genus();
  const long x = static_cast<long>(s.degree());
  if (x > g - 1) throw Error(ErrorKind::PreconditionNotMet, "oracle requires x <= g - 1");
  OracleFinding out;
  std::vector<const HyperPoint*> pts;
  for (const auto& e : s.entries()) pts.push_back(&std::get<HyperPoint>(e.point.where));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i]->is_weierstrass()) ++out.e;
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!pts[i]->is_weierstrass() && pts[i]->x == pts[j]->x) ++out.f;
  }
  const auto ef = static_cast<long>(out.e), ff = static_cast<long>(out.f);
  out.predicted_h0 = g - 2 * x + ef + ff;
  out.corrected_h0 = g - 2 * x + ef + 2 * ff;
  out.membership_predicted = out.e > 0 || out.f > 0;
  const TerraciniReport rep = defect_report(curve, LinearSystem::canonical(), s);
  out.actual_h0 = static_cast<long>(rep.h0_V_minus_2S);
  out.actual_member = rep.member;
  out.agrees = out.predicted_h0 == out.actual_h0 && out.membership_predicted == out.actual_member;
  return out;
}

struct Extension {
  CurvePoint added;
  TerraciniReport before;
  TerraciniReport after;
};

/// Adds a seeded general point p to a member S and reports S + p. Requires
/// 2x + 2 <= dim V, which forces rank(S + p) <= rank(S) + 2 < min(dim V, 2x + 2).
inline Extension extend_by_general_point(const Curve& curve, const LinearSystem& system, const Divisor& s,
                                         std::uint64_t seed) {
  const std::size_t x = s.degree();
  const std::size_t dim = system.dim(curve);
  if (2 * x + 2 > dim)
    throw Error(ErrorKind::PreconditionNotMet,
                "extension needs 2x + 2 <= dim V (2x < r for hyperplanes, x <= (g - 2)/2 for the canonical system)");
  Extension out;
  out.before = defect_report(curve, system, s);
  if (!out.before.member) throw Error(ErrorKind::PreconditionNotMet, "S is not in the Terracini locus");
  for (std::uint64_t attempt = 0;; ++attempt) {
    CurvePoint p = sample_point(curve, seed + attempt * 0x9e3779b97f4a7c15ULL);
    bool fresh = true;
    for (const auto& e : s.entries()) {
      if (e.point == p) fresh = false;
      // also avoid the conjugate of a point already in S, or a shared parameter
      if (const auto* hp = std::get_if<HyperPoint>(&p.where))
        if (const auto* hq = std::get_if<HyperPoint>(&e.point.where); hq && hq->x == hp->x) fresh = false;
    }
    if (!fresh) {
      if (attempt > 32) throw Error(ErrorKind::NoRationalPointFound, "could not draw a point outside S");
      continue;
    }
    out.added = p;
    break;
  }
  out.after = defect_report(curve, system, s.plus(out.added));
  return out;
}

}  // namespace terracini
