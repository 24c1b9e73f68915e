#ifndef GFC_PARSER_HPP
#define GFC_PARSER_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "gfc/varieties.hpp"

namespace gfc {

/// Parser for function-element expressions used by the CLI, e.g.
///   "x1^2*x2^-1", "3*x^2 - 1/2", "(z-1)^-2 + z^3".
/// Pole factors on the sphere must match a declared puncture.
class FunctionParser {
 public:
  FunctionParser(const VarietyKind& variety, std::string text)
      : v_(variety), s_(std::move(text)) {}

  FunctionElem parse() {
    FunctionElem r = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  FunctionElem parse_expr() {
    FunctionElem acc = parse_term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += parse_term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  FunctionElem parse_term() {
    FunctionElem acc = parse_factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc = multiply(acc, parse_factor());
      } else {
        return acc;
      }
    }
  }

  FunctionElem parse_factor() {
    skip_ws();
    char c = peek();
    if (c == '(') return parse_pole_factor();
    if (c == 'x' || c == 'z') return parse_var_power();
    if (std::isdigit(c) || c == '-') {
      Rational q = parse_number();
      return FunctionElem::constant(v_, q);
    }
    fail("expected factor");
    return FunctionElem::zero(v_);  // unreachable
  }

  FunctionElem parse_pole_factor() {
    expect('(');
    skip_ws();
    expect('z');
    skip_ws();
    expect('-');
    Rational a = parse_number();
    skip_ws();
    expect(')');
    int e = parse_exponent(-1);
    if (v_.family != VarietyFamily::PuncturedSphere)
      fail("(z-a) factors only exist on the punctured sphere");
    int pole = 0;
    for (std::size_t i = 0; i < v_.punctures.size(); ++i)
      if (v_.punctures[i] == a) pole = static_cast<int>(i) + 1;
    if (pole == 0) fail("pole is not a declared puncture");
    if (e >= 0) {
      // positive power of (z-a): expand as a polynomial in z
      FunctionElem lin = FunctionElem::coordinate(v_) - FunctionElem::constant(v_, a);
      return pow(lin, e);
    }
    return FunctionElem::from_key(v_, FKey::polepow(pole, -e));
  }

  FunctionElem parse_var_power() {
    char c = peek();
    ++pos_;
    int dir = 1;
    if (c == 'x') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(s_[pos_])) ++pos_;
      if (pos_ > start) dir = std::stoi(s_.substr(start, pos_ - start));
      if (v_.family == VarietyFamily::PuncturedSphere)
        fail("use z on the punctured sphere");
    } else if (v_.family != VarietyFamily::PuncturedSphere) {
      fail("z is only a sphere coordinate");
    }
    if (dir < 1 || dir > v_.n) fail("coordinate index out of range");
    int e = parse_exponent(1);
    if (v_.family == VarietyFamily::Affine && e < 0)
      fail("negative exponent on affine space");
    if (v_.family == VarietyFamily::PuncturedSphere) {
      if (e < 0) fail("z^-k is not a sphere basis element; declare 0 as a puncture");
      return FunctionElem::from_key(v_, FKey::zpow(e));
    }
    std::vector<int> exps(v_.n, 0);
    exps[dir - 1] = e;
    return FunctionElem::from_key(v_, FKey::monomial(std::move(exps)));
  }

  int parse_exponent(int dflt) {
    skip_ws();
    if (peek() != '^') return dflt > 0 ? 1 : -1;
    ++pos_;
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected exponent");
    int e = std::stoi(s_.substr(start, pos_ - start));
    return neg ? -e : e;
  }

  Rational parse_number() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < s_.size() && (std::isdigit(s_[pos_]) || s_[pos_] == '/')) ++pos_;
    if (pos_ == start) fail("expected number");
    return parse_rational(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(s_[pos_])) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_) + ": " + msg);
  }

  VarietyKind v_;
  std::string s_;
  std::size_t pos_ = 0;
};

inline FunctionElem parse_function(const VarietyKind& v, const std::string& text) {
  return FunctionParser(v, text).parse();
}

}  // namespace gfc

#endif
