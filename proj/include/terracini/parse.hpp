#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "terracini/error.hpp"
#include "terracini/multipoly.hpp"
#include "terracini/rational.hpp"

namespace terracini {

/// Recursive-descent parser for polynomial expressions.
///
///   expr    := term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := ('+' | '-') factor | power
///   power   := primary ('^' natural)?
///   primary := rational | name | '(' expr ')'
///   rational:= digits ('/' digits)?
///
/// Division only appears inside a rational literal. Names must belong to the
/// declared variable list. Errors report the 1-based line and column.
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::vector<std::string> variables)
      : text_(text), vars_(std::move(variables)) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  MultiPoly factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 4096) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(vars_.size(), number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return MultiPoly::variable(vars_.size(), i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Rational number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ > from;
    };
    digits();
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail("floating-point literals are not accepted; write p/q");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      if (!digits()) fail("expected denominator digits after '/'");
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
        fail("floating-point literals are not accepted; write p/q");
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const Error& e) {
      pos_ = start;
      fail(e.message());
    }
  }

  std::string_view text_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

inline MultiPoly parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  return PolynomialParser(text, variables).parse();
}

/// Parses a univariate expression in `variable`.
inline Polynomial parse_univariate(std::string_view text, const std::string& variable) {
  const MultiPoly p = parse_polynomial(text, {variable});
  std::vector<Rational> c(static_cast<std::size_t>(std::max(p.degree_in(0), 0)) + 1);
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  return Polynomial(std::move(c));
}

}  // namespace terracini
