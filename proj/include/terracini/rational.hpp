#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "terracini/error.hpp"

namespace terracini {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// as long as every value passes through canonicalize() after construction.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses an exact rational literal: optional sign, digits, optional "/digits".
/// Floating-point spellings ("0.5", "1e3") are rejected.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto bad = [&](const char* why) {
    return Error(ErrorKind::ParseError, "invalid rational literal '" + std::string(text) + "': " + why);
  };
  if (s.empty()) throw bad("empty");
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t to = from;
    while (to < s.size() && std::isdigit(static_cast<unsigned char>(s[to]))) ++to;
    return to;
  };
  std::size_t num_end = digits(pos);
  if (num_end == pos) throw bad("expected digits");
  std::string num = s.substr(pos, num_end - pos);
  std::string den = "1";
  if (num_end < s.size()) {
    if (s[num_end] == '.' || s[num_end] == 'e' || s[num_end] == 'E') throw bad("floating-point literals are not accepted");
    if (s[num_end] != '/') throw bad("unexpected character");
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1) throw bad("expected denominator digits");
    if (den_end != s.size()) throw bad("trailing characters");
    den = s.substr(num_end + 1, den_end - num_end - 1);
  }
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw bad("zero denominator");
  if (negative) n = -n;
  return make_rational(n, d);
}

/// Exact square root in Q when it exists.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return make_rational(rn, rd);
}

inline Rational ipow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace terracini
