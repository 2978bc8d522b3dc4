// terracini: command-line front end.
//
// Exit status: 0 when every check passes, 1 when a mathematical
// counterexample was found (the witness is part of the report), 2 on input
// errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "terracini/io.hpp"
#include "terracini/suites.hpp"

namespace {

using namespace terracini;

constexpr int kPass = 0;
constexpr int kCounterexample = 1;
constexpr int kInputError = 2;

struct Common {
  std::string curve_path;
  std::string points;
  std::string divisor_path;
  std::string system = "auto";
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::string format = "structured";
};

struct Loaded {
  Curve curve;
  std::string curve_text;
};

Loaded load(const Common& c) {
  if (c.curve_path.empty()) throw Error(ErrorKind::InvalidInput, "--curve FILE is required");
  std::string text = read_file(c.curve_path);
  Curve curve = parse_curve(text);
  return {std::move(curve), std::move(text)};
}

LinearSystem pick_system(const Common& c, const Curve& curve) {
  if (c.system == "hyperplane") return LinearSystem::hyperplane();
  if (c.system == "canonical") return LinearSystem::canonical();
  return curve.is<Hyperelliptic>() ? LinearSystem::canonical() : LinearSystem::hyperplane();
}

Format pick_format(const Common& c) { return c.format == "table" ? Format::Table : Format::Structured; }

std::pair<Divisor, std::string> load_divisor_arg(const Common& c, const Curve& curve) {
  if (!c.points.empty() && !c.divisor_path.empty()) throw Error(ErrorKind::InvalidInput, "give --points or --divisor, not both");
  if (!c.points.empty()) return {parse_point_list(curve, c.points), c.points};
  if (!c.divisor_path.empty()) return {load_divisor(curve, c.divisor_path), read_file(c.divisor_path)};
  throw Error(ErrorKind::InvalidInput, "a divisor is required: --points LIST or --divisor FILE");
}

Json curve_summary(const Curve& curve) {
  Json j{{"id", curve.id()}, {"kind", std::string(to_string(curve.kind()))}, {"ambient", curve.ambient()}, {"degree", curve.degree()}};
  if (curve.genus()) j["genus"] = *curve.genus();
  return j;
}

std::string digest_input(std::initializer_list<std::string_view> parts) {
  std::string s;
  for (auto p : parts) {
    s += p;
    s += '\x1f';
  }
  return s;
}

int emit(const Json& doc, Format f) {
  std::cout << render(doc, f);
  return kPass;
}

int run_query(const std::string& verb, const Common& c) {
  const Loaded in = load(c);
  const LinearSystem sys = pick_system(c, in.curve);
  const auto [divisor, divisor_text] = load_divisor_arg(c, in.curve);
  const TerraciniReport rep = verb == "scheme-member" ? scheme_report(in.curve, sys, divisor) : defect_report(in.curve, sys, divisor);
  Json doc = report_header(verb, digest_input({verb, in.curve_text, divisor_text, sys.name()}));
  doc["curve"] = curve_summary(in.curve);
  doc["system"] = sys.name();
  doc["divisor"] = to_string(divisor);
  doc["report"] = report_to_json(rep);
  if (verb == "member") doc["verdict"] = rep.member ? "member" : "not-member";
  if (verb == "scheme-member") doc["verdict"] = rep.member_scheme ? "member" : "not-member";
  if (verb == "member" && sys.kind() == SystemKind::Canonical) {
    const CanonicalMembership rr = canonical_membership(in.curve, divisor);
    doc["riemann_roch"] = Json{{"branch", rr.branch == RRBranch::SmallDegree ? "2x < g" : "2x >= g"},
                               {"h0_2S", rr.h0_2S},
                               {"h0_K_minus_2S", rr.h0_K_minus_2S}};
  }
  return emit(doc, pick_format(c));
}

struct ConstructArgs {
  std::string recipe;
  std::size_t r = 3, d = 4;
  int g = 3;
  std::string contacts = "0,1";
  std::string roots;
  std::string fiber_x;
  bool find_fiber = false;
  bool smooth_at_infinity = false;
  std::string out;
};

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_rational(part));
  return v;
}

int run_construct(const ConstructArgs& a, const Common& c) {
  std::optional<WitnessRecipe> w;
  const std::string& n = a.recipe;
  if (n == "tangent-rational") w = tangent_rational_curve(a.r, a.d, rational_list(a.contacts), a.smooth_at_infinity);
  else if (n == "witness-quartic") w = witness_quartic();
  else if (n == "total-flex") w = total_flex_plane_curve(a.d);
  else if (n == "elliptic-quartic") w = tangent_elliptic_quartic();
  else if (n == "nodal-union") w = tangent_nodal_union();
  else if (n == "split-hyperelliptic") {
    const auto roots = a.roots.empty() ? (a.g == 3 ? integer_range(1, 8) : symmetric_roots(a.g)) : rational_list(a.roots);
    if (!a.fiber_x.empty()) w = split_hyperelliptic(a.g, roots, FiberMode::Given, parse_rational(a.fiber_x));
    else w = split_hyperelliptic(a.g, roots, a.find_fiber ? FiberMode::Search : FiberMode::None);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown recipe '" + n +
                                             "'; known: tangent-rational, witness-quartic, total-flex, elliptic-quartic, nodal-union, "
                                             "split-hyperelliptic");
  }
  Json params = Json::object();
  for (const auto& [k, v] : w->parameters) params[k] = v;
  Json facts = Json::object();
  for (const auto& [k, v] : w->facts) facts[k] = v;
  const Json curve_json = curve_to_json(w->curve);
  Json doc = report_header("construct", digest_input({"construct", w->name, params.dump()}));
  doc["recipe"] = w->name;
  doc["parameters"] = params;
  doc["curve_file"] = curve_json;
  doc["system"] = w->system.name();
  doc["divisor"] = to_string(w->divisor);
  doc["divisor_file"] = divisor_to_json(w->divisor);
  doc["scheme"] = w->scheme;
  doc["report"] = report_to_json(w->report);
  doc["facts"] = facts;
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + a.out + "'");
    out << curve_json.dump(2) << "\n";
  }
  return emit(doc, pick_format(c));
}

Json probe_json(const ProbeResult& p) {
  Json failures = Json::array();
  for (std::size_t i = 0; i < p.failing_seeds.size(); ++i)
    failures.push_back(Json{{"seed", p.failing_seeds[i]}, {"witness", divisor_to_json(p.witnesses[i])}, {"note", p.notes[i]}});
  return Json{{"trials", p.trials}, {"failures", p.failures}, {"verdict", p.verdict()}, {"counterexamples", failures}};
}

struct ProbeArgs {
  std::string kind;
  std::size_t x = 2;
  std::string lengths;
  std::string planted;
};

int run_probe(const ProbeArgs& a, const Common& c) {
  const Loaded in = load(c);
  const LinearSystem sys = pick_system(c, in.curve);
  ProbeResult p;
  std::string extra;
  if (a.kind == "emptiness") {
    std::optional<Divisor> planted;
    if (!a.planted.empty()) planted = parse_point_list(in.curve, a.planted);
    p = emptiness_probe(in.curve, sys, a.x, c.trials, c.seed, planted);
    extra = std::to_string(a.x) + "|" + a.planted;
  } else if (a.kind == "generic-rank") {
    std::vector<unsigned> lengths;
    std::stringstream ss(a.lengths);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        lengths.push_back(static_cast<unsigned>(std::stoul(part)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "--lengths expects comma-separated positive integers");
      }
    }
    if (lengths.empty()) throw Error(ErrorKind::InvalidInput, "--lengths is required for generic-rank");
    p = generic_rank_probe(in.curve, sys, lengths, c.trials, c.seed);
    extra = a.lengths;
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown probe '" + a.kind + "'; known: emptiness, generic-rank");
  }
  Json doc = report_header("probe " + a.kind,
                           digest_input({"probe", a.kind, in.curve_text, sys.name(), std::to_string(c.seed), std::to_string(c.trials), extra}));
  doc["curve"] = curve_summary(in.curve);
  doc["system"] = sys.name();
  doc["seed"] = c.seed;
  doc["probe"] = probe_json(p);
  emit(doc, pick_format(c));
  return p.passed() ? kPass : kCounterexample;
}

int run_scan(const std::string& kind, const Common& c) {
  const Loaded in = load(c);
  Json doc = report_header("scan " + kind, digest_input({"scan", kind, in.curve_text, std::to_string(c.seed), std::to_string(c.trials)}));
  doc["curve"] = curve_summary(in.curve);
  doc["seed"] = c.seed;
  if (kind == "coplanar") {
    const CoplanarLocus loc = coplanar_tangent_locus(in.curve);
    Json zeros = Json::array();
    for (const auto& [s, t] : loc.exact_zeros) zeros.push_back(Json{{"s", to_string(s)}, {"t", to_string(t)}, {"member", true}});
    Json hints = Json::array();
    for (const auto& [s, t] : loc.hints) hints.push_back(Json{{"s", s}, {"t", t}});
    doc["D"] = to_string(loc.d, {"s", "t"});
    doc["diagonal_order"] = loc.k;
    doc["Dred"] = to_string(loc.reduced, {"s", "t"});
    doc["exact_zeros"] = zeros;
    doc["float_hints"] = hints;
  } else if (kind == "bitangent") {
    const BitangentSearch b = bitangent_search(in.curve, c.trials, c.seed);
    Json found = Json::array();
    for (const auto& f : b.findings)
      found.push_back(Json{{"kind", f.kind}, {"line", to_string(f.line)}, {"S", to_string(f.s)}, {"report", report_to_json(f.report)}});
    Json hints = Json::array();
    for (const auto& h : b.hints) hints.push_back(Json{{"x", h.x}, {"y", h.y}, {"gap", h.gap}});
    doc["findings"] = found;
    doc["float_hints"] = hints;
  } else if (kind == "flex-weight") {
    const FlexWeight w = flex_weight(in.curve, c.seed);
    doc["flex_weight_total"] = w.total;
    doc["expected_3d_d_minus_2"] = 3L * in.curve.degree() * (in.curve.degree() - 2);
    emit(doc, pick_format(c));
    return w.total == 3L * in.curve.degree() * (in.curve.degree() - 2) ? kPass : kCounterexample;
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown scan '" + kind + "'; known: coplanar, bitangent, flex-weight");
  }
  return emit(doc, pick_format(c));
}

struct SuiteArgs {
  std::string action;
  std::string name;
  int max_genus = 4;
  std::size_t max_x = 4;
};

int run_suite(const SuiteArgs& a, const Common& c) {
  if (a.action == "list") {
    Json list = Json::array();
    for (const auto& s : suite_registry()) list.push_back(Json{{"name", s.name}, {"summary", s.summary}});
    Json doc = report_header("suite list", "suite list");
    doc["suites"] = list;
    return emit(doc, pick_format(c));
  }
  if (a.action != "run") throw Error(ErrorKind::InvalidInput, "suite expects 'list' or 'run <name>'");
  std::vector<const SuiteSpec*> chosen;
  if (a.name == "all") {
    for (const auto& s : suite_registry()) chosen.push_back(&s);
  } else if (const SuiteSpec* s = find_suite(a.name)) {
    chosen.push_back(s);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown suite '" + a.name + "'; see 'suite list'");
  }
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.caps = {a.max_genus, a.max_x};
  Json results = Json::array();
  bool ok = true;
  for (const auto* s : chosen) {
    const SuiteResult r = s->run(opt);
    ok = ok && r.passed();
    results.push_back(suite_to_json(r));
  }
  Json doc = report_header("suite run " + a.name, digest_input({"suite", a.name, std::to_string(c.seed), std::to_string(a.max_genus),
                                                                 std::to_string(a.max_x)}));
  doc["seed"] = c.seed;
  doc["verdict"] = ok ? "pass" : "counterexample-found";
  doc["suites"] = results;
  if (pick_format(c) == Format::Table) {
    std::cout << "seed " << c.seed << "\n";
    for (const auto& r : results) {
      std::cout << r["suite"].get<std::string>() << ": " << r["verdict"].get<std::string>() << "\n";
      for (const auto& k : r["checks"]) {
        std::cout << "  " << (k["passed"].get<bool>() ? "pass" : "FAIL") << "  " << k["check"].get<std::string>();
        const auto detail = k["detail"].get<std::string>();
        if (!detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
      }
    }
    std::cout << "verdict " << doc["verdict"].get<std::string>() << "\n";
  } else {
    emit(doc, Format::Structured);
  }
  return ok ? kPass : kCounterexample;
}

void add_common(CLI::App* app, Common& c, bool divisor, bool sampling) {
  app->add_option("--curve", c.curve_path, "curve description file (JSON)");
  if (divisor) {
    app->add_option("--points", c.points, "comma-separated point literals, e.g. \"0,1\" or \"2*(0:0:1)\"");
    app->add_option("--divisor", c.divisor_path, "divisor file (JSON)");
  }
  app->add_option("--system", c.system, "linear system: hyperplane, canonical, or auto (canonical on hyperelliptic curves)")
      ->check(CLI::IsMember({"auto", "hyperplane", "canonical"}));
  if (sampling) {
    app->add_option("--seed", c.seed, "seed for every random draw (default 1)");
    app->add_option("--trials", c.trials, "number of random trials (default 200)");
  }
  app->add_option("--format", c.format, "output format: structured (JSON) or table")->check(CLI::IsMember({"structured", "table"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terracini: Terracini defects and membership on explicit projective curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common common;
  std::vector<std::pair<std::string, CLI::App*>> queries;
  const std::pair<const char*, const char*> query_verbs[] = {{"defect", "Terracini report for a reduced set S"},
                                                           {"member", "membership verdict for a reduced set S"},
                                                           {"scheme-member", "scheme report for a possibly non-reduced Z"}};
  for (const auto& [verb, about] : query_verbs) {
    auto* sub = app.add_subcommand(verb, about);
    add_common(sub, common, true, false);
    queries.emplace_back(verb, sub);
  }

  ConstructArgs construct;
  auto* con = app.add_subcommand("construct", "build a witness curve and verify its designated divisor");
  con->add_option("recipe", construct.recipe, "tangent-rational, witness-quartic, total-flex, elliptic-quartic, nodal-union, split-hyperelliptic")
      ->required();
  con->add_option("--r", construct.r, "ambient dimension (tangent-rational)");
  con->add_option("--d", construct.d, "degree (tangent-rational, total-flex)");
  con->add_option("--contacts", construct.contacts, "contact parameters, comma-separated (tangent-rational)");
  con->add_flag("--smooth-at-infinity", construct.smooth_at_infinity, "use the layout that is immersive at t = inf");
  con->add_option("--g", construct.g, "genus (split-hyperelliptic)");
  con->add_option("--roots", construct.roots, "2g + 2 distinct rational roots, comma-separated");
  con->add_option("--fiber-x", construct.fiber_x, "abscissa of a rational fiber pair");
  con->add_flag("--find-fiber", construct.find_fiber, "search small rationals for a fiber pair");
  con->add_option("--out", construct.out, "also write the curve file here");
  con->add_option("--format", common.format, "structured or table")->check(CLI::IsMember({"structured", "table"}));

  ProbeArgs probe;
  auto* pr = app.add_subcommand("probe", "seeded random probes");
  pr->add_option("kind", probe.kind, "emptiness or generic-rank")->required();
  pr->add_option("--x", probe.x, "size of the random sets (emptiness)");
  pr->add_option("--lengths", probe.lengths, "multiplicities e1,...,es (generic-rank)");
  pr->add_option("--planted", probe.planted, "point list tested as trial 0 (emptiness)");
  add_common(pr, common, false, true);

  std::string scan_kind;
  auto* sc = app.add_subcommand("scan", "bivariate and plane-curve scans");
  sc->add_option("kind", scan_kind, "coplanar, bitangent or flex-weight")->required();
  add_common(sc, common, false, true);

  SuiteArgs suite;
  auto* su = app.add_subcommand("suite", "named verification suites");
  su->add_option("action", suite.action, "list or run")->required();
  su->add_option("name", suite.name, "suite name, or 'all'");
  su->add_option("--seed", common.seed, "seed (default 1)");
  su->add_option("--max-genus", suite.max_genus, "enumeration cap on the genus (default 4)");
  su->add_option("--max-x", suite.max_x, "enumeration cap on the subset size (default 4)");
  su->add_option("--format", common.format, "structured or table")->check(CLI::IsMember({"structured", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    for (const auto& [verb, sub] : queries)
      if (sub->parsed()) return run_query(verb, common);
    if (con->parsed()) return run_construct(construct, common);
    if (pr->parsed()) return run_probe(probe, common);
    if (sc->parsed()) return run_scan(scan_kind, common);
    if (su->parsed()) return run_suite(suite, common);
  } catch (const Error& e) {
    std::cerr << "terracini: " << e.what() << "\n";
    return e.kind() == ErrorKind::SelfVerificationFailed ? kCounterexample : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "terracini: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
