#pragma once

// Text input for slopes: integers, fractions, sqrt(INT), the golden shorthand
// phi = (sqrt(5)-1)/2, and arithmetic combining them, e.g. "sqrt(10)/7",
// "(1+2*sqrt(3))/5", "1/(2+phi)". A plain decimal such as "0.1405" yields an
// approximate value.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/scalar.hpp"

namespace billiard {

struct ParsedAlpha {
  Scalar value;
  std::vector<std::string> notes;  // e.g. a radicand that was not square-free
};

namespace detail {

class AlphaParser {
 public:
  AlphaParser(std::string_view text, double tol) : s_(text), tol_(tol) {}

  ParsedAlpha run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    std::size_t start = pos_;
    if (is_decimal_literal()) {
      return {Scalar::approx(std::stod(std::string(s_.substr(start))), tol_), {}};
    }
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return {std::move(v), std::move(notes_)};
  }

 private:
  bool is_decimal_literal() const {
    std::size_t i = pos_;
    if (i < s_.size() && (s_[i] == '+' || s_[i] == '-')) ++i;
    bool digits = false, dot = false, exp = false;
    for (; i < s_.size(); ++i) {
      char c = s_[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
      } else if (c == '.' && !dot && !exp) {
        dot = true;
      } else if ((c == 'e' || c == 'E') && digits && !exp) {
        exp = true;
        if (i + 1 < s_.size() && (s_[i + 1] == '+' || s_[i + 1] == '-')) ++i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        for (; i < s_.size(); ++i)
          if (!std::isspace(static_cast<unsigned char>(s_[i]))) return false;
        break;
      } else {
        return false;
      }
    }
    return digits && (dot || exp);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      std::size_t at = pos_;
      if (eat('+')) {
        v = combine(v, term(), '+', at);
      } else if (eat('-')) {
        v = combine(v, term(), '-', at);
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      std::size_t at = pos_;
      if (eat('*')) {
        v = combine(v, unary(), '*', at);
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v = combine(v, d, '/', at);
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  Scalar primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    if (eat('(')) {
      Scalar v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return Scalar::rational(integer(), 1);
    std::size_t at = pos_;
    std::string word;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
    if (word == "phi") return Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5);
    if (word == "sqrt") {
      expect('(');
      skip();
      std::size_t rad_at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("sqrt takes a non-negative integer", rad_at);
      mpz_class rad = integer();
      expect(')');
      if (!rad.fits_slong_p()) throw ParseError("radicand too large", rad_at);
      long d = rad.get_si();
      auto [sq, rest] = detail::split_square(d);
      if (sq > 1 && rest > 1)
        notes_.push_back("radicand " + std::to_string(d) + " is not square-free; using " + std::to_string(sq) +
                         "*sqrt(" + std::to_string(rest) + ")");
      return d == 0 ? Scalar(0) : Scalar::sqrt_of(d);
    }
    if (word.empty()) throw ParseError("unexpected '" + std::string(1, s_[at]) + "'", at);
    throw ParseError("unknown name '" + word + "'", at);
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.')
      throw ParseError("decimals cannot be combined with exact terms", pos_);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  static Scalar combine(const Scalar& a, const Scalar& b, char op, std::size_t at) {
    try {
      switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default: return a / b;
      }
    } catch (const IncompatibleField& e) {
      throw ParseError(e.what(), at);
    }
  }

  std::string_view s_;
  double tol_;
  std::size_t pos_ = 0;
  std::vector<std::string> notes_;
};

}  // namespace detail

/// Parses a slope expression. Exact forms give Rational or Quadratic values;
/// a lone decimal literal gives an approximate value with tolerance `tol`.
inline ParsedAlpha parse_alpha(std::string_view text, double tol = kDefaultTolerance) {
  return detail::AlphaParser(text, tol).run();
}

}  // namespace billiard
