#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "terracini/io.hpp"
#include "terracini/witness.hpp"

using namespace terracini;

namespace {

const std::string kData = TERRACINI_DATA;

template <class F>
std::optional<ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(TERRACINI_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST(Digest, Fnv1a64KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(CurveFiles, FixturesLoad) {
  EXPECT_EQ(load_curve(kData + "/rnc3.curve").ambient(), 3u);
  EXPECT_EQ(load_curve(kData + "/hyperelliptic-g3.curve").genus(), 3);
  EXPECT_EQ(weierstrass_points(load_curve(kData + "/hyperelliptic-g3-odd.curve")).size(), 7u);
  EXPECT_EQ(load_curve(kData + "/total-flex-4.curve").degree(), 4);
  EXPECT_EQ(load_curve(kData + "/elliptic-quartic.curve").kind(), CurveKind::Space);
  EXPECT_EQ(load_curve(kData + "/nodal-union.curve").kind(), CurveKind::Nodal);
}

TEST(CurveFiles, RoundTrip) {
  for (const char* name : {"rnc3", "witness-quartic", "hyperelliptic-g3", "hyperelliptic-g3-odd", "fermat-4", "elliptic-quartic",
                           "nodal-union", "planted-bitangent"}) {
    const Curve a = load_curve(kData + "/" + name + ".curve");
    const Json j = curve_to_json(a);
    const Curve b = curve_from_json(j);
    EXPECT_EQ(curve_to_json(b).dump(), j.dump()) << name;
    EXPECT_EQ(b.degree(), a.degree()) << name;
  }
}

TEST(CurveFiles, Errors) {
  EXPECT_EQ(kind_of([] { (void)load_curve(kData + "/bad-float.curve"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { (void)load_curve(kData + "/does-not-exist.curve"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { (void)parse_curve("{\"type\": \"plane\",\n \"F\": }"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { (void)parse_curve(R"({"type": "torus"})"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { (void)parse_curve(R"({"type": "parametric", "r": 2, "coords": ["1", "t"]})"); }), ErrorKind::AmbientMismatch);
  try {
    (void)load_curve(kData + "/bad-float.curve");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 1, column"), std::string::npos) << e.what();
  }
}

TEST(Points, Literals) {
  const Curve rnc = rational_normal_curve(3);
  EXPECT_EQ(parse_point(rnc, "-3/2"), param_point(make_rational(-3, 2)));
  EXPECT_EQ(parse_point(rnc, "inf"), param_infinity());

  const Curve h = genus3_fixture();
  EXPECT_EQ(parse_point(h, "3"), hyper_point(h, 3, 0));
  EXPECT_EQ(parse_point(h, "0:+"), hyper_point_sqrt(h, 0, 1));
  EXPECT_EQ(kind_of([&] { (void)parse_point(h, "0:1"); }), ErrorKind::PointNotOnCurve);

  const Curve f = fermat_curve(4);
  EXPECT_EQ(parse_point(total_flex_plane_curve(4).curve, "(0:0:1)"), plane_point({0, 0, 1}));
  EXPECT_EQ(kind_of([&] { (void)parse_point(f, "(0.5:0:1)"); }), ErrorKind::ParseError);

  const Curve n = tangent_nodal_union().curve;
  EXPECT_EQ(parse_point(n, "1@0"), param_point(0, 1));
}

TEST(Points, ListsAndMultiplicities) {
  const Curve rnc = rational_normal_curve(3);
  const Divisor d = parse_point_list(rnc, "0, 1, 2*5");
  EXPECT_EQ(d.degree(), 4u);
  EXPECT_FALSE(d.is_reduced());
  EXPECT_EQ(to_string(d), "t=0 + t=1 + 2*t=5");
  EXPECT_EQ(kind_of([&] { (void)parse_point_list(rnc, "0, 0"); }), ErrorKind::InvalidInput);
}

TEST(Divisors, FileFormatAndRoundTrip) {
  const Curve flex = load_curve(kData + "/total-flex-4.curve");
  const Divisor z = load_divisor(flex, kData + "/total-flex-4.divisor");
  EXPECT_EQ(to_string(z), "2*(0:0:1)");
  EXPECT_EQ(to_string(divisor_from_json(flex, divisor_to_json(z))), to_string(z));

  const Curve n = load_curve(kData + "/nodal-union.curve");
  const Divisor s = load_divisor(n, kData + "/nodal-union.divisor");
  EXPECT_EQ(s.degree(), 3u);
  EXPECT_TRUE(defect_report(n, LinearSystem::hyperplane(), s).member);
}

TEST(Reports, HeaderAndRendering) {
  const Json h = report_header("defect", "abc");
  EXPECT_EQ(h["tool"], "terracini");
  EXPECT_EQ(h["version"], "0.3.0");
  EXPECT_EQ(h["input_digest"], "fnv1a64:" + hex64(fnv1a64("abc")));
  const Json r = report_to_json(witness_quartic().report);
  EXPECT_EQ(r["rank"], 3);
  EXPECT_EQ(r["member"], true);
  const std::string table = render(r, Format::Table);
  EXPECT_NE(table.find("defect"), std::string::npos);
}

TEST(Cli, DefectOnTheRationalNormalCubic) {
  const CliRun r = cli("defect --curve " + kData + "/rnc3.curve --points 0,1");
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["report"]["defect"], 0);
  EXPECT_EQ(j["report"]["member"], false);
  EXPECT_EQ(j["command"], "defect");
}

TEST(Cli, MemberOnTheWitnessQuartic) {
  const CliRun r = cli("member --curve " + kData + "/witness-quartic.curve --points 0,1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out)["report"]["member"], true);
}

TEST(Cli, SchemeMemberFromDivisorFile) {
  const CliRun r = cli("scheme-member --curve " + kData + "/total-flex-4.curve --divisor " + kData + "/total-flex-4.divisor");
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["report"]["member_scheme"], true);
  EXPECT_EQ(j["report"]["span_dim"], 1);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(cli("member --curve missing.curve --points 0").status, 2);
  EXPECT_EQ(cli("defect --curve " + kData + "/bad-float.curve --points 0").status, 2);
  EXPECT_EQ(cli("defect --curve " + kData + "/rnc3.curve --points 0.5").status, 2);
  EXPECT_EQ(cli("suite run no-such-suite").status, 2);
  EXPECT_EQ(cli("--bogus-flag").status, 2);
}

TEST(Cli, SuiteRunAndDeterminism) {
  const CliRun a = cli("suite run hyperelliptic-g3");
  ASSERT_EQ(a.status, 0);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["verdict"], "pass");
  std::size_t pairs = 0;
  for (const auto& rec : j["suites"][0]["records"])
    if (rec["member"] == true) ++pairs;
  EXPECT_EQ(pairs, 28u);
  EXPECT_EQ(cli("suite run hyperelliptic-g3").out, a.out);
}

TEST(Cli, ProbeFindsPlantedCounterexample) {
  const CliRun r = cli("probe emptiness --curve " + kData + "/witness-quartic.curve --x 2 --trials 20 --planted 0,1");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(Json::parse(r.out)["probe"]["verdict"], "counterexample-found");
  EXPECT_EQ(cli("probe emptiness --curve " + kData + "/rnc3.curve --x 2 --trials 20").status, 0);
}

TEST(Cli, ConstructRecipe) {
  const CliRun r = cli("construct tangent-rational --r 5 --d 6 --contacts 0,1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out)["report"]["member"], true);
  EXPECT_EQ(cli("construct tangent-rational --r 3 --d 2 --contacts 0,1").status, 2);
}
