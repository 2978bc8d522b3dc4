#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "terracini/checks.hpp"
#include "terracini/io.hpp"
#include "terracini/searchlab.hpp"
#include "terracini/witness.hpp"

namespace terracini {

struct SuiteOptions {
  std::uint64_t seed = 1;
  SuiteCaps caps;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  Json records = Json::array();

  void check(std::string check_name, bool ok, std::string detail) {
    checks.push_back({std::move(check_name), ok, std::move(detail)});
  }
  [[nodiscard]] bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct SuiteSpec {
  std::string name;
  std::string summary;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

namespace detail {

inline std::string probe_detail(const ProbeResult& p) {
  std::string s = std::to_string(p.trials) + " trials, " + std::to_string(p.failures) + " failures";
  if (!p.failing_seeds.empty()) s += ", first failing seed " + std::to_string(p.failing_seeds.front()) + ": " + to_string(p.witnesses.front());
  return s;
}

inline Json row_json(const SubsetRow& r) {
  Json j{{"S", to_string(r.s)}, {"e", r.e}, {"f", r.f}};
  j["predicted_h0"] = r.predicted_h0 ? Json(*r.predicted_h0) : Json(nullptr);
  j["actual_h0"] = r.actual_h0;
  j["member"] = r.member;
  j["agrees"] = r.agrees ? Json(*r.agrees) : Json(nullptr);
  return j;
}

inline Json recipe_record(const WitnessRecipe& w) {
  Json j{{"recipe", w.name}, {"curve", w.curve.id()}, {"S", to_string(w.divisor)}};
  j["report"] = report_to_json(w.report);
  return j;
}

inline Curve genus_fixture(int g) {
  if (g == 3) return genus3_fixture();
  return make_split_hyperelliptic(integer_range(1, 2 * g + 2), 1, "hyperelliptic-g" + std::to_string(g));
}

inline SuiteResult suite_rational_normal(const SuiteOptions& o) {
  SuiteResult r{"rational-normal", {}, Json::array()};
  const auto sys = LinearSystem::hyperplane();
  for (std::size_t rr : {3u, 5u}) {
    const Curve c = rational_normal_curve(rr);
    const ProbeResult p = emptiness_probe(c, sys, (rr + 1) / 2, 200, o.seed);
    r.check("rnc" + std::to_string(rr) + " random sets of size " + std::to_string((rr + 1) / 2) + " have defect 0", p.passed(),
            probe_detail(p));
  }
  const CoplanarLocus loc = coplanar_tangent_locus(rational_normal_curve(3));
  r.check("rnc3 reduced coplanar determinant is a nonzero constant", loc.reduced.total_degree() == 0,
          "Dred = " + to_string(loc.reduced, {"s", "t"}) + ", diagonal order " + std::to_string(loc.k));
  const Curve c3 = rational_normal_curve(3);
  const ProbeResult a = generic_rank_probe(c3, sys, {2, 2}, 20, o.seed);
  const ProbeResult b = generic_rank_probe(c3, sys, {1, 1, 1}, 20, o.seed);
  r.check("rnc3 lengths (2,2) give dim W(-Z) = 0", a.passed(), probe_detail(a));
  r.check("rnc3 lengths (1,1,1) give dim W(-Z) = 1", b.passed(), probe_detail(b));
  const ProbeResult k = generic_rank_probe(genus3_fixture(), LinearSystem::canonical(), {1, 1}, 20, o.seed);
  r.check("genus 3 canonical, two general points give dim V(-Z) = 1", k.passed(), probe_detail(k));
  return r;
}

inline SuiteResult suite_witness_quartic(const SuiteOptions& o) {
  SuiteResult r{"witness-quartic", {}, Json::array()};
  const WitnessRecipe w = witness_quartic();
  r.records.push_back(recipe_record(w));
  r.check("S = {0,1}: rank 3, defect 1, member", w.report.rank == 3 && w.report.defect == 1 && w.report.member,
          "rank " + std::to_string(w.report.rank) + ", defect " + std::to_string(w.report.defect));
  const CoplanarLocus loc = coplanar_tangent_locus(w.curve);
  r.check("Dred(0,1) = 0", loc.reduced.evaluate({0, 1}) == 0, "Dred = " + to_string(loc.reduced, {"s", "t"}));
  const ProbeResult p = emptiness_probe(w.curve, LinearSystem::hyperplane(), 2, 50, o.seed, w.divisor);
  r.check("planted pair is found by the emptiness probe", !p.failing_seeds.empty() && to_string(p.witnesses.front()) == to_string(w.divisor),
          probe_detail(p));
  return r;
}

inline SuiteResult suite_hyperelliptic_g3(const SuiteOptions& o) {
  SuiteResult r{"hyperelliptic-g3", {}, Json::array()};
  const Curve c = genus3_fixture();
  const SubsetSuite pairs = weierstrass_subset_suite(c, 2, std::nullopt, o.caps);
  bool all_h0_one = true;
  for (const auto& row : pairs.rows) {
    all_h0_one = all_h0_one && row.member && row.actual_h0 == 1;
    r.records.push_back(row_json(row));
  }
  r.check("all Weierstrass pairs are members with h0(K - 2S) = 1", all_h0_one && pairs.rows.size() == 28,
          std::to_string(pairs.members) + " of " + std::to_string(pairs.rows.size()));
  r.check("member pairs count 2^(g-1) (2^g - 1) = 28", pairs.members == 28, std::to_string(pairs.members));
  const SubsetSuite singles = weierstrass_subset_suite(c, 1, std::nullopt, o.caps);
  r.check("all 8 Weierstrass points are members at x = 1", singles.members == 8 && singles.rows.size() == 8,
          std::to_string(singles.members));
  const SubsetSuite triples = weierstrass_subset_suite(c, 3, std::nullopt, o.caps);
  std::size_t random_members = 0, random_total = 0;
  for (std::size_t x : {3u, 4u})
    for (std::size_t i = 0; i < 20; ++i) {
      const Divisor s = Divisor::reduced(draw_points(c, x, mix_seed(o.seed, 100 * x + i)));
      ++random_total;
      if (defect_report(c, LinearSystem::canonical(), s).member) ++random_members;
    }
  r.check("no canonical member for x >= g", triples.members == 0 && random_members == 0,
          std::to_string(triples.rows.size()) + " Weierstrass triples and " + std::to_string(random_total) + " random sets checked");
  return r;
}

inline SuiteResult suite_oracle(const SuiteOptions& o) {
  SuiteResult r{"oracle", {}, Json::array()};
  const Curve c3 = genus3_fixture();
  std::size_t rows = 0, bad = 0;
  for (std::size_t x : {1u, 2u}) {
    const SubsetSuite s = weierstrass_subset_suite(c3, x, std::nullopt, o.caps);
    rows += s.rows.size();
    bad += s.weierstrass_disagreements;
  }
  r.check("g = 3: prediction matches on every Weierstrass-only subset", bad == 0,
          std::to_string(rows) + " subsets, " + std::to_string(bad) + " disagreements");
  const Curve c7 = genus_fixture(7);
  const auto branch = weierstrass_points(c7);
  std::size_t bad7 = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng(mix_seed(o.seed, i));
    const auto x = static_cast<std::size_t>(rng.uniform(1, 6));
    std::vector<CurvePoint> pts;
    while (pts.size() < x) {
      const CurvePoint& p = branch[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(branch.size()) - 1))];
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    if (!hyperelliptic_oracle(c7, Divisor::reduced(pts)).agrees) ++bad7;
  }
  r.check("g = 7: prediction matches on 100 sampled Weierstrass subsets", bad7 == 0, std::to_string(bad7) + " disagreements");
  const Divisor fiber = Divisor::reduced({hyper_point_sqrt(c3, 0, 1), hyper_point_sqrt(c3, 0, -1)});
  const OracleFinding f = hyperelliptic_oracle(c3, fiber);
  r.records.push_back(Json{{"S", to_string(fiber)},
                           {"e", f.e},
                           {"f", f.f},
                           {"predicted_h0", f.predicted_h0},
                           {"corrected_h0", f.corrected_h0},
                           {"actual_h0", f.actual_h0},
                           {"member", f.actual_member},
                           {"agrees", f.agrees},
                           {"flag", f.agrees ? "" : "fiber-pair-mismatch"}});
  r.check("g = 3 fiber pair: mismatch reproduced (predicted 0, actual 1)",
          !f.agrees && f.predicted_h0 == 0 && f.actual_h0 == 1 && f.corrected_h0 == 1,
          "predicted " + std::to_string(f.predicted_h0) + ", actual " + std::to_string(f.actual_h0));
  return r;
}

inline SuiteResult suite_riemann_roch(const SuiteOptions& o) {
  SuiteResult r{"riemann-roch", {}, Json::array()};
  const std::size_t per[] = {167, 167, 166};
  int idx = 0;
  std::size_t total = 0, failures = 0;
  for (int g : {3, 5, 7}) {
    std::size_t members = 0;
    const ProbeResult p = rr_dichotomy_probe(genus_fixture(g), per[idx], mix_seed(o.seed, static_cast<std::uint64_t>(g)), &members);
    total += p.trials;
    failures += p.failures;
    r.records.push_back(Json{{"g", g}, {"queries", p.trials}, {"members", members}, {"disagreements", p.failures}});
    ++idx;
  }
  r.check("dichotomy agrees with the rank criterion", failures == 0 && total == 500,
          std::to_string(total) + " queries, " + std::to_string(failures) + " disagreements");
  return r;
}

inline SuiteResult suite_gonality(const SuiteOptions&) {
  SuiteResult r{"gonality", {}, Json::array()};
  const WitnessRecipe w = split_hyperelliptic(5, symmetric_roots(5), FiberMode::Search);
  r.records.push_back(recipe_record(w));
  r.check("g = 5 fiber pair is a canonical member with 2 < g/2", w.report.member && 2 * 2 < 5,
          "S = " + to_string(w.divisor) + ", rank " + std::to_string(w.report.rank));
  return r;
}

inline SuiteResult suite_extension(const SuiteOptions& o) {
  SuiteResult r{"extension", {}, Json::array()};
  const Curve c7 = genus_fixture(7);
  const Divisor s7 = Divisor::reduced({hyper_point(c7, 1, 0), hyper_point(c7, 2, 0)});
  const WitnessRecipe t5 = tangent_rational_curve(5, 6, {Rational(0), Rational(1)});
  struct Case {
    std::string label;
    const Curve* curve;
    LinearSystem system;
    Divisor s;
  };
  const std::vector<Case> cases{{"canonical g=7", &c7, LinearSystem::canonical(), s7},
                                {"hyperplane r=5", &t5.curve, LinearSystem::hyperplane(), t5.divisor}};
  for (const auto& k : cases) {
    std::size_t fails = 0;
    std::vector<std::uint64_t> bad;
    for (std::size_t i = 0; i < 50; ++i) {
      const std::uint64_t seed = mix_seed(o.seed, i);
      const Extension e = extend_by_general_point(*k.curve, k.system, k.s, seed);
      if (!e.after.member) {
        ++fails;
        bad.push_back(seed);
        r.records.push_back(Json{{"case", k.label}, {"seed", seed}, {"S", to_string(k.s.plus(e.added))}, {"report", report_to_json(e.after)}});
      }
    }
    r.check(k.label + ": 50 extensions stay members", fails == 0,
            std::to_string(fails) + " failures" + (bad.empty() ? "" : ", first seed " + std::to_string(bad.front())));
  }
  return r;
}

inline SuiteResult suite_total_flex(const SuiteOptions&) {
  SuiteResult r{"total-flex", {}, Json::array()};
  for (std::size_t d : {4u, 6u}) {
    const WitnessRecipe w = total_flex_plane_curve(d);
    r.records.push_back(recipe_record(w));
    r.check("d = " + std::to_string(d) + ": (d/2) p is a scheme member with span_dim 1", w.report.member_scheme && w.report.span_dim == 1,
            "rank " + std::to_string(w.report.rank));
  }
  return r;
}

inline SuiteResult suite_flex_weight(const SuiteOptions& o) {
  SuiteResult r{"flex-weight", {}, Json::array()};
  struct Case {
    Curve curve;
    long expected;
  };
  const std::vector<Case> cases{{fermat_curve(4), 24}, {total_flex_plane_curve(4).curve, 24}, {fermat_curve(3), 9}};
  for (const auto& k : cases) {
    std::vector<long> seen;
    for (std::uint64_t i = 0; i < 3; ++i) seen.push_back(flex_weight_total(k.curve, mix_seed(o.seed, i)));
    bool ok = true;
    std::string list;
    for (long v : seen) {
      ok = ok && v == k.expected;
      list += (list.empty() ? "" : ",") + std::to_string(v);
    }
    r.records.push_back(Json{{"curve", k.curve.id()}, {"weights", list}});
    r.check(k.curve.id() + ": total flex weight " + std::to_string(k.expected) + " under 3 coordinate changes", ok, list);
  }
  const FlexWeight local = flex_weight(total_flex_plane_curve(4).curve, o.seed, ProjectivePoint({0, 0, 1}));
  r.check("total-flex quartic: weight >= 2 at the hyperflex", local.local && *local.local >= 2,
          local.local ? std::to_string(*local.local) : "unavailable");
  return r;
}

inline SuiteResult suite_tangency(const SuiteOptions&) {
  SuiteResult r{"tangency", {}, Json::array()};
  const WitnessRecipe e = tangent_elliptic_quartic();
  const WitnessRecipe n = tangent_nodal_union();
  r.records.push_back(recipe_record(e));
  r.records.push_back(recipe_record(n));
  r.check("elliptic quartic: member at x = 2", e.report.member && e.report.x == 2, "rank " + std::to_string(e.report.rank));
  r.check("nodal union: member at x = 3", n.report.member && n.report.x == 3, "rank " + std::to_string(n.report.rank));
  return r;
}

inline SuiteResult suite_bitangent(const SuiteOptions& o) {
  SuiteResult r{"bitangent", {}, Json::array()};
  const BitangentSearch planted = bitangent_search(planted_bitangent_quartic(), 100, o.seed);
  bool found = false;
  for (const auto& f : planted.findings) {
    r.records.push_back(Json{{"curve", "planted-bitangent"}, {"kind", f.kind}, {"S", to_string(f.s)}, {"rank", f.report.rank}});
    found = found || (f.kind == "bitangent" && f.line == ProjectivePoint({0, 1, 0}));
  }
  r.check("planted bitangent y = 0 confirmed", found, std::to_string(planted.findings.size()) + " findings");
  const BitangentSearch flex = bitangent_search(total_flex_plane_curve(4).curve, 100, o.seed);
  bool hyper = false;
  for (const auto& f : flex.findings) hyper = hyper || (f.kind == "hyperflex" && to_string(f.s) == "2*(0:0:1)");
  r.check("total-flex quartic: hyperflex at (0:0:1) found", hyper, std::to_string(flex.findings.size()) + " findings");
  const auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  const BitangentSearch conic = bitangent_search(make_plane(x * x + y * y - z * z, "conic"), 100, o.seed);
  r.check("conic: no findings", conic.findings.empty(), std::to_string(conic.findings.size()) + " findings");
  return r;
}

inline SuiteResult suite_infrastructure(const SuiteOptions& o) {
  SuiteResult r{"infrastructure", {}, Json::array()};
  const ProbeResult a = invariance_probe(rational_normal_curve(4), 2, 20, o.seed);
  const ProbeResult b = invariance_probe(witness_quartic().curve, 2, 20, o.seed);
  const ProbeResult c = invariance_probe(planted_bitangent_quartic(), 2, 20, o.seed);
  r.check("chart and projective invariance, rnc4", a.passed(), probe_detail(a));
  r.check("chart and projective invariance, witness quartic", b.passed(), probe_detail(b));
  r.check("chart and projective invariance, plane quartic", c.passed(), probe_detail(c));
  const ProbeResult l = implicit_lift_probe(50, o.seed);
  r.check("implicit_lift residual vanishes on 50 random lifts", l.passed(), probe_detail(l));
  const WitnessRecipe w = witness_quartic();
  const std::string one = render(report_to_json(defect_report(w.curve, w.system, w.divisor)), Format::Structured);
  const std::string two = render(report_to_json(defect_report(w.curve, w.system, w.divisor)), Format::Structured);
  const ProbeResult p1 = emptiness_probe(genus3_fixture(), LinearSystem::canonical(), 2, 20, o.seed);
  const ProbeResult p2 = emptiness_probe(genus3_fixture(), LinearSystem::canonical(), 2, 20, o.seed);
  r.check("repeated reports and probes are identical", one == two && p1.failing_seeds == p2.failing_seeds, "");
  return r;
}

}  // namespace detail

inline const std::vector<SuiteSpec>& suite_registry() {
  static const std::vector<SuiteSpec> suites{
      {"rational-normal", "rational normal curves have empty Terracini loci at x = (r+1)/2", detail::suite_rational_normal},
      {"witness-quartic", "the quartic (1 : t : t^2 : t^2 (t-1)^2) with S = {0,1}", detail::suite_witness_quartic},
      {"hyperelliptic-g3", "Weierstrass subsets of y^2 = (x-1)...(x-8)", detail::suite_hyperelliptic_g3},
      {"oracle", "combinatorial h0(K - 2S) prediction versus linear algebra", detail::suite_oracle},
      {"riemann-roch", "500 canonical queries across g = 3, 5, 7", detail::suite_riemann_roch},
      {"gonality", "fiber pair of the double cover on a genus-5 curve", detail::suite_gonality},
      {"extension", "members stay members after adding a general point", detail::suite_extension},
      {"total-flex", "(d/2) p at a total flex for d = 4, 6", detail::suite_total_flex},
      {"flex-weight", "intersection number of a plane curve with its Hessian", detail::suite_flex_weight},
      {"tangency", "elliptic quartic and nodal union tangent to w = 0", detail::suite_tangency},
      {"bitangent", "bitangent and hyperflex search on plane curves", detail::suite_bitangent},
      {"infrastructure", "invariance, lifting and reproducibility", detail::suite_infrastructure},
  };
  return suites;
}

inline const SuiteSpec* find_suite(std::string_view name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return &s;
  return nullptr;
}

inline Json suite_to_json(const SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json j{{"suite", r.name}, {"verdict", r.passed() ? "pass" : "counterexample-found"}, {"checks", checks}};
  if (!r.records.empty()) j["records"] = r.records;
  return j;
}

}  // namespace terracini
