#pragma once

#include <array>
#include <cctype>
#include <string>

#include "satcurve/error.hpp"
#include "satcurve/mpoly.hpp"

namespace satcurve {

namespace detail {

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' integer)?
//   atom   := integer ['/' integer] | variable | '(' expr ')' | ('+'|'-') factor
template <std::size_t N>
class Parser {
 public:
  Parser(const std::string& text, const std::array<std::string, N>& names) : s_(text), names_(names) {}

  MPoly<N> parse() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty expression");
    MPoly<N> p = expr();
    skip();
    if (pos_ < s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly<N> expr() {
    MPoly<N> acc = term();
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  MPoly<N> term() {
    MPoly<N> acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  MPoly<N> factor() {
    MPoly<N> base = atom();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      Int e = integer();
      if (!e.fits_uint_p() || e > 4096) throw SyntaxError(at, "exponent out of range");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  MPoly<N> atom() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly<N> inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = integer();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        Int den = integer();
        if (den == 0) throw SyntaxError(at, "zero denominator");
        return MPoly<N>(make_rat(num, den));
      }
      return MPoly<N>(Rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < N; ++i)
        if (names_[i] == name) return MPoly<N>::variable(i);
      throw Error(ErrorKind::UnknownVariable, "'" + name + "' at position " + std::to_string(start));
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  Int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "expected integer");
    return Int(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  const std::array<std::string, N>& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <std::size_t N>
MPoly<N> parse_polynomial(const std::string& text, const std::array<std::string, N>& names) {
  return detail::Parser<N>(text, names).parse();
}

inline BiPoly parse_bipoly(const std::string& text) { return parse_polynomial<2>(text, xy_names()); }
inline TriPoly parse_tripoly(const std::string& text) { return parse_polynomial<3>(text, xyt_names()); }

inline std::string to_string(const BiPoly& f) { return f.to_string(xy_names()); }
inline std::string to_string(const TriPoly& f) { return f.to_string(xyt_names()); }

}  // namespace satcurve
