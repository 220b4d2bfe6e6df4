#pragma once

// Recursive-descent parser for the expression grammar:
//
//   expr      := term (('+'|'-') term)*
//   term      := factor (('*'|'/') factor)*
//   factor    := '-' factor | power
//   power     := atom ('^' factor)?
//   atom      := number | 'x' | 'e' | 'pi' | func '(' expr ')'
//              | '(' expr ')' | piecewise
//   func      := 'exp' | 'ln' | 'sqrt' | 'sin' | 'cos'
//   piecewise := 'piecewise' '(' piece (';' piece)* ')'
//   piece     := number ':' number '->' expr
//
// '^' binds tighter than unary minus and is right-associative, so -x^2 is
// -(x^2) and 2^-1 is 2^(-1).

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"

namespace sobolev {

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    skip_space();
    if (at_end()) fail(pos_, "empty expression");
    Expr e = expr();
    skip_space();
    if (!at_end()) fail(pos_, std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    std::size_t clamped = src_.empty() ? 0 : std::min(at, src_.size() - 1);
    throw ParseError(clamped, msg);
  }

  bool at_end() const { return pos_ >= src_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_space();
    return at_end() ? '\0' : src_[pos_];
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (src_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(pos_, std::string("expected '") + c + "' at end of input");
      fail(pos_, std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::make(Kind::add, {lhs, term()});
      else if (accept('-'))
        lhs = Expr::make(Kind::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = Expr::make(Kind::mul, {lhs, factor()});
      else if (accept('/'))
        lhs = Expr::make(Kind::div, {lhs, factor()});
      else
        return lhs;
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::make(Kind::neg, {factor()});
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::make(Kind::pow, {base, factor()});
    return base;
  }

  static bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }

  bool number_ahead() {
    const char c = peek();
    return is_digit(c) ||
           (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]));
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && is_digit(src_[pos_])) ++pos_;
    if (!at_end() && src_[pos_] == '.') {
      ++pos_;
      while (!at_end() && is_digit(src_[pos_])) ++pos_;
    }
    // Exponent only when digits follow, so "2e" leaves 'e' for the caller.
    if (!at_end() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        pos_ = p;
        while (!at_end() && is_digit(src_[pos_])) ++pos_;
      }
    }
    if (pos_ == start) fail(start, "expected a number");
    double v = 0.0;
    auto [ptr, ec] =
        std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_)
      fail(start, "malformed number");
    return v;
  }

  std::string_view identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    return src_.substr(start, pos_ - start);
  }

  Expr atom() {
    const char c = peek();
    const std::size_t start = pos_;
    if (at_end()) fail(pos_, "unexpected end of input");
    if (number_ahead()) return Expr::constant(number());
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)))
      fail(start, std::string("unexpected '") + c + "'");

    const std::string_view id = identifier();
    if (id == "x") return Expr::var();
    if (id == "e") return Expr::named_e();
    if (id == "pi") return Expr::named_pi();
    if (id == "piecewise") return piecewise_body();

    Kind kind;
    if (id == "exp")
      kind = Kind::exp;
    else if (id == "ln")
      kind = Kind::ln;
    else if (id == "sqrt")
      kind = Kind::sqrt;
    else if (id == "sin")
      kind = Kind::sin;
    else if (id == "cos")
      kind = Kind::cos;
    else
      fail(start, "unknown identifier '" + std::string(id) + "'");
    expect('(');
    Expr arg = expr();
    expect(')');
    return Expr::make(kind, {arg});
  }

  Expr piecewise_body() {
    expect('(');
    std::vector<Piece> pieces;
    do {
      const std::size_t piece_at = (skip_space(), pos_);
      const double lo = number();
      expect(':');
      const double hi = number();
      if (!accept("->")) fail(pos_, "expected '->'");
      const std::size_t body_at = (skip_space(), pos_);
      Expr body = expr();
      if (contains_piecewise(body)) fail(body_at, "nested piecewise");
      if (!(lo < hi)) fail(piece_at, "piece bounds must increase");
      if (pieces.empty() && lo != 0.0) fail(piece_at, "first piece must start at 0");
      if (!pieces.empty() && pieces.back().hi != lo)
        fail(piece_at, "pieces must be contiguous");
      pieces.push_back(Piece{lo, hi, std::move(body)});
    } while (accept(';'));
    if (pieces.back().hi != 1.0) fail(pos_, "last piece must end at 1");
    expect(')');
    return Expr::make(Kind::piecewise, {}, 0.0, std::move(pieces));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Throws ParseError with the byte offset of the offending token.
inline Expr parse(std::string_view src) { return detail::Parser(src).parse(); }

}  // namespace sobolev
