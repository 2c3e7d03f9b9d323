#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cyops/operator.hpp"

namespace cyops {

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
      : Error(ErrorKind::ParseError, describe(position, expected, found)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string describe(std::size_t pos, const std::vector<std::string>& expected, const std::string& found) {
    std::string s = "at position " + std::to_string(pos) + ": expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
    return s + "} but found " + found;
  }
  std::size_t position_;
  std::vector<std::string> expected_;
};

namespace detail {

/// Recursive descent over
///   expr := term (('+'|'-') term)*      term := ['-'] factor ('*' factor)*
///   factor := base ('^' uint)?          base := rational | z | T | D | '(' expr ')'
class OperatorParser {
 public:
  explicit OperatorParser(std::string_view text) : s_(text) {}

  DOperator parse() {
    DOperator r = expr();
    skip();
    if (i_ != s_.size()) fail({"'+'", "'-'", "'*'", "'^'", "end of input"});
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip();
    std::string found = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input";
    throw ParseError(i_, std::move(expected), found);
  }

  DOperator expr() {
    DOperator acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  DOperator term() {
    const bool negate = accept('-');
    DOperator acc = factor();
    while (accept('*')) acc = acc * factor();
    return negate ? -acc : acc;
  }

  DOperator factor() {
    DOperator b = base();
    if (!accept('^')) return b;
    skip();
    const std::string digits = uint_digits();
    if (digits.empty()) fail({"unsigned integer"});
    unsigned long e = std::stoul(digits);
    DOperator r = DOperator::scalar(RatFunc(1));
    for (unsigned long k = 0; k < e; ++k) r = r * b;
    return r;
  }

  std::string uint_digits() {
    std::string d;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += s_[i_++];
    return d;
  }

  DOperator base() {
    skip();
    if (i_ >= s_.size()) fail({"rational", "'z'", "'T'", "'D'", "'('"});
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = uint_digits();
      Rational r{Integer(num)};
      if (accept('/')) {
        skip();
        std::string den = uint_digits();
        if (den.empty()) fail({"unsigned integer"});
        Integer d(den);
        if (d == 0) throw ParseError(i_, {"nonzero denominator"}, "0");
        r = make_rational(Integer(num), d);
      }
      return DOperator::scalar(RatFunc(r));
    }
    ++i_;
    switch (c) {
      case 'z': return DOperator::scalar(RatFunc::z());
      case 'D': return DOperator::d();
      case 'T': return DOperator::scalar(RatFunc::z()) * DOperator::d();
      case '(': {
        DOperator e = expr();
        if (!accept(')')) fail({"')'", "'+'", "'-'", "'*'"});
        return e;
      }
      default:
        --i_;
        fail({"rational", "'z'", "'T'", "'D'", "'('"});
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Exact operator from its text form; products compose left to right without reordering.
inline DOperator parse_operator(std::string_view text) { return detail::OperatorParser(text).parse(); }

/// Polynomial theta-form of the parsed operator.
inline ThetaOperator parse_theta_operator(std::string_view text) { return to_theta_form(parse_operator(text)); }

/// Canonical text form, accepted back by parse_operator.
inline std::string render(const ThetaOperator& L) { return L.to_string(); }

}  // namespace cyops
