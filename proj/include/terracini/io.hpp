#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "terracini/curve.hpp"
#include "terracini/error.hpp"
#include "terracini/jets.hpp"
#include "terracini/parse.hpp"
#include "terracini/terracini.hpp"

namespace terracini {

inline constexpr std::string_view kToolName = "terracini";
inline constexpr std::string_view kToolVersion = "0.3.0";

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a; the input digest embedded in every report.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, what + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorKind::ParseError, std::string("field '") + key + "' must be a string or an integer");
}

inline Rational rational_field(const Json& j, const char* key) { return parse_rational(string_field(j, key)); }

inline std::vector<std::string> names_field(const Json& j, const char* key, std::vector<std::string> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

inline std::string where(const std::string& ctx, const Error& e) { return ctx + ": " + e.message(); }

}  // namespace detail

/// Builds a curve from a parsed description object.
///
///   {"type": "parametric", "r": 3, "variable": "t", "coords": ["1", "t", "t^2", "t^3"]}
///   {"type": "plane", "F": "x^4 + y^4 + z^4"}                      (variables x, y, z)
///   {"type": "hyperelliptic", "f": "x^7 - x"}  or  {"roots": ["1", ..., "8"], "leading": "1"}
///   {"type": "space", "r": 3, "variables": ["x", "y", "z", "w"], "polys": ["...", "..."]}
///   {"type": "nodal", "components": [ {...}, {...} ]}
///
/// Every object may carry an "id".
inline Curve curve_from_json(const Json& j) {
  const std::string type = detail::string_field(j, "type");
  const std::string id = j.contains("id") ? j.at("id").get<std::string>() : std::string();
  if (type == "parametric") {
    const std::string var = j.contains("variable") ? j.at("variable").get<std::string>() : "t";
    std::vector<Polynomial> coords;
    std::size_t i = 0;
    for (const auto& c : detail::field(j, "coords")) {
      try {
        coords.push_back(parse_univariate(c.get<std::string>(), var));
      } catch (const Error& e) {
        throw Error(e.kind(), detail::where("coords[" + std::to_string(i) + "]", e));
      }
      ++i;
    }
    if (j.contains("r") && j.at("r").get<std::size_t>() + 1 != coords.size())
      throw Error(ErrorKind::AmbientMismatch, "r + 1 coordinates expected");
    return make_parametric(std::move(coords), id);
  }
  if (type == "plane") {
    const auto names = detail::names_field(j, "variables", {"x", "y", "z"});
    try {
      return make_plane(parse_polynomial(detail::string_field(j, "F"), names), id);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError) throw;
      throw Error(e.kind(), detail::where("F", e));
    }
  }
  if (type == "hyperelliptic") {
    if (j.contains("roots")) {
      std::vector<Rational> roots;
      for (const auto& r : j.at("roots")) roots.push_back(parse_rational(r.is_string() ? r.get<std::string>() : std::to_string(r.get<long long>())));
      const Rational lead = j.contains("leading") ? detail::rational_field(j, "leading") : Rational(1);
      return make_split_hyperelliptic(roots, lead, id);
    }
    const std::string var = j.contains("variable") ? j.at("variable").get<std::string>() : "x";
    Polynomial f;
    try {
      f = parse_univariate(detail::string_field(j, "f"), var);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError) throw;
      throw Error(e.kind(), detail::where("f", e));
    }
    return make_hyperelliptic(std::move(f), j.value("split", false), id);
  }
  if (type == "space") {
    const auto r = detail::field(j, "r").get<std::size_t>();
    std::vector<std::string> fallback;
    for (std::size_t i = 0; i <= r; ++i) fallback.push_back("x" + std::to_string(i));
    const auto names = detail::names_field(j, "variables", fallback);
    if (names.size() != r + 1) throw Error(ErrorKind::AmbientMismatch, "space curves need r + 1 variable names");
    std::vector<MultiPoly> eqs;
    std::size_t i = 0;
    for (const auto& p : detail::field(j, "polys")) {
      try {
        eqs.push_back(parse_polynomial(p.get<std::string>(), names));
      } catch (const Error& e) {
        throw Error(e.kind(), detail::where("polys[" + std::to_string(i) + "]", e));
      }
      ++i;
    }
    return make_space(r, std::move(eqs), id);
  }
  if (type == "nodal") {
    std::vector<Curve> comps;
    for (const auto& c : detail::field(j, "components")) comps.push_back(curve_from_json(c));
    return make_nodal(std::move(comps), id);
  }
  throw Error(ErrorKind::ParseError, "unknown curve type '" + type + "'");
}

inline Curve parse_curve(std::string_view text) {
  try {
    return curve_from_json(detail::parse_json(text, "curve file"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("curve file: ") + e.what());
  }
}

inline Curve load_curve(const std::string& path) { return parse_curve(read_file(path)); }

/// Inverse of curve_from_json; polynomial strings reparse to the same curve.
inline Json curve_to_json(const Curve& c) {
  Json j;
  j["type"] = std::string(to_string(c.kind()));
  if (!c.id().empty()) j["id"] = c.id();
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, ParametricRational>) {
          j["r"] = rep.r;
          j["variable"] = "t";
          Json coords = Json::array();
          for (const auto& p : rep.coords) coords.push_back(to_string(p, "t"));
          j["coords"] = coords;
        } else if constexpr (std::is_same_v<T, PlaneImplicit>) {
          j["F"] = to_string(rep.form, {"x", "y", "z"});
        } else if constexpr (std::is_same_v<T, Hyperelliptic>) {
          if (rep.roots) {
            Json roots = Json::array();
            for (const auto& r : *rep.roots) roots.push_back(to_string(r));
            j["roots"] = roots;
            j["leading"] = to_string(rep.f.leading());
          } else {
            j["f"] = to_string(rep.f, "x");
          }
        } else if constexpr (std::is_same_v<T, SpaceImplicit>) {
          j["r"] = rep.r;
          std::vector<std::string> names;
          if (rep.r == 3) names = {"x", "y", "z", "w"};
          else
            for (std::size_t i = 0; i <= rep.r; ++i) names.push_back("x" + std::to_string(i));
          j["variables"] = names;
          Json polys = Json::array();
          for (const auto& e : rep.equations) polys.push_back(to_string(e, names));
          j["polys"] = polys;
        } else {
          Json comps = Json::array();
          for (const auto& k : rep.components) comps.push_back(curve_to_json(k));
          j["components"] = comps;
        }
      },
      c.representation());
  return j;
}

// ---------------------------------------------------------------------------
// Points and divisors

/// One point literal, depending on the curve:
///   parametric     "t" value or "inf"
///   hyperelliptic  "x" (a Weierstrass abscissa), "x:y" with y rational, or "x:+" / "x:-" for +-sqrt f(x)
///   plane, space   "(a:b:c)" homogeneous coordinates
///   nodal          "k@" prefix naming the component
inline CurvePoint parse_point(const Curve& curve, std::string_view text) {
  std::string s(text);
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t\n");
    const auto e = v.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  s = trim(s);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty point literal");
  if (curve.is<NodalUnion>()) {
    const auto at = s.find('@');
    if (at == std::string::npos) throw Error(ErrorKind::ParseError, "nodal points need a component prefix 'k@': '" + s + "'");
    std::size_t k = 0;
    try {
      k = std::stoul(s.substr(0, at));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad component index in '" + s + "'");
    }
    const auto& comps = curve.as<NodalUnion>().components;
    if (k >= comps.size()) throw Error(ErrorKind::InvalidInput, "component " + std::to_string(k) + " does not exist");
    CurvePoint p = parse_point(comps[k], s.substr(at + 1));
    p.component = k;
    return p;
  }
  switch (curve.kind()) {
    case CurveKind::Parametric:
      if (s == "inf") return param_infinity();
      return param_point(parse_rational(s));
    case CurveKind::Hyperelliptic: {
      const auto colon = s.find(':');
      const Rational x = parse_rational(trim(s.substr(0, colon)));
      if (colon == std::string::npos) {
        if (curve.as<Hyperelliptic>().f(x) != 0)
          throw Error(ErrorKind::PointNotOnCurve, "x = " + to_string(x) + " is not a Weierstrass abscissa; give 'x:y' or 'x:+'");
        return hyper_point_sqrt(curve, x, 0);
      }
      const std::string y = trim(s.substr(colon + 1));
      if (y == "+" || y == "-") {
        if (curve.as<Hyperelliptic>().f(x) == 0) return hyper_point_sqrt(curve, x, 0);
        return hyper_point_sqrt(curve, x, y == "+" ? 1 : -1);
      }
      return hyper_point(curve, x, parse_rational(y));
    }
    case CurveKind::Plane:
    case CurveKind::Space: {
      if (s.front() != '(' || s.back() != ')') throw Error(ErrorKind::ParseError, "expected '(a:b:...)', got '" + s + "'");
      std::vector<Rational> coords;
      std::stringstream ss(s.substr(1, s.size() - 2));
      std::string part;
      while (std::getline(ss, part, ':')) coords.push_back(parse_rational(trim(part)));
      if (coords.size() != curve.ambient() + 1)
        throw Error(ErrorKind::DimensionMismatch, "point needs " + std::to_string(curve.ambient() + 1) + " coordinates");
      CurvePoint p = curve.is<PlaneImplicit>() ? plane_point(coords) : space_point(coords);
      return p;
    }
    case CurveKind::Nodal: break;
  }
  throw Error(ErrorKind::InvalidInput, "unsupported curve kind");
}

/// Comma-separated point literals; "m*P" gives multiplicity m.
inline Divisor parse_point_list(const Curve& curve, std::string_view text) {
  std::vector<Divisor::Entry> entries;
  std::string s(text);
  std::size_t start = 0, col = 1;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string token = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    col = start + 1;
    unsigned mult = 1;
    std::string body = token;
    const auto star = token.find('*');
    if (star != std::string::npos) {
      try {
        mult = static_cast<unsigned>(std::stoul(token.substr(0, star)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "column " + std::to_string(col) + ": bad multiplicity in '" + token + "'");
      }
      body = token.substr(star + 1);
    }
    try {
      entries.push_back({parse_point(curve, body), mult});
    } catch (const Error& e) {
      throw Error(e.kind(), "points, column " + std::to_string(col) + ": " + e.message());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Divisor(std::move(entries));
}

/// {"points": [{"t": "0", "mult": 2}, {"x": "1", "y": "0"}, {"x": "3", "sign": "+"},
///             {"coords": ["0", "0", "1"]}, {"component": 1, "t": "0"}]}
inline Divisor divisor_from_json(const Curve& curve, const Json& j) {
  std::vector<Divisor::Entry> entries;
  for (const auto& p : detail::field(j, "points")) {
    std::string literal;
    if (p.contains("t")) literal = detail::string_field(p, "t");
    else if (p.contains("x")) {
      literal = detail::string_field(p, "x");
      if (p.contains("y")) literal += ":" + detail::string_field(p, "y");
      else if (p.contains("sign")) literal += ":" + detail::string_field(p, "sign");
    } else if (p.contains("coords")) {
      literal = "(";
      bool first = true;
      for (const auto& c : p.at("coords")) {
        literal += (first ? "" : ":") + (c.is_string() ? c.get<std::string>() : std::to_string(c.get<long long>()));
        first = false;
      }
      literal += ")";
    } else {
      throw Error(ErrorKind::ParseError, "point object needs 't', 'x' or 'coords'");
    }
    if (p.contains("component")) literal = std::to_string(p.at("component").get<std::size_t>()) + "@" + literal;
    entries.push_back({parse_point(curve, literal), p.value("mult", 1u)});
  }
  return Divisor(std::move(entries));
}

inline Divisor load_divisor(const Curve& curve, const std::string& path) {
  const std::string text = read_file(path);
  try {
    return divisor_from_json(curve, detail::parse_json(text, "divisor file"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("divisor file: ") + e.what());
  }
}

inline Json point_to_json(const CurvePoint& p) {
  Json j;
  if (p.component) j["component"] = *p.component;
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ParamValue>) {
          j["t"] = w.at_infinity ? std::string("inf") : to_string(w.t);
        } else if constexpr (std::is_same_v<T, HyperPoint>) {
          j["x"] = to_string(w.x);
          if (w.y) j["y"] = to_string(*w.y);
          else j["sign"] = w.sign > 0 ? "+" : "-";
        } else {
          Json c = Json::array();
          for (const auto& v : w.p.coords()) c.push_back(to_string(v));
          j["coords"] = c;
        }
      },
      p.where);
  return j;
}

inline Json divisor_to_json(const Divisor& d) {
  Json pts = Json::array();
  for (const auto& e : d.entries()) {
    Json p = point_to_json(e.point);
    if (e.multiplicity != 1) p["mult"] = e.multiplicity;
    pts.push_back(p);
  }
  return Json{{"points", pts}};
}

// ---------------------------------------------------------------------------
// Reports

inline Json report_to_json(const TerraciniReport& r) {
  return Json{{"x", r.x},
              {"dim_V", r.dim_V},
              {"rank", r.rank},
              {"h0_V_minus_2S", r.h0_V_minus_2S},
              {"defect", r.defect},
              {"span_dim", r.span_dim},
              {"member", r.member},
              {"member_scheme", r.member_scheme}};
}

enum class Format { Structured, Table };

/// Header shared by every emitted document.
inline Json report_header(std::string_view command, std::string_view digest_input) {
  return Json{{"tool", std::string(kToolName)},
              {"version", std::string(kToolVersion)},
              {"command", std::string(command)},
              {"input_digest", "fnv1a64:" + hex64(fnv1a64(digest_input))}};
}

/// Flattens a JSON document into "key  value" lines; arrays of objects become
/// one record per line.
inline void render_table(const Json& j, std::ostream& os, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      render_table(v, os, key);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << key << " (" << v.size() << " records)\n";
      for (const auto& rec : v) {
        os << "  ";
        bool first = true;
        for (auto f = rec.begin(); f != rec.end(); ++f) {
          os << (first ? "" : "  ") << f.key() << "=" << (f.value().is_string() ? f.value().get<std::string>() : f.value().dump());
          first = false;
        }
        os << "\n";
      }
    } else {
      os << std::left << std::setw(28) << key << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

inline std::string render(const Json& j, Format f) {
  if (f == Format::Structured) return j.dump(2) + "\n";
  std::ostringstream os;
  render_table(j, os);
  return os.str();
}

}  // namespace terracini
