#pragma once

// Symbolic expressions in one real variable x on [0,1].
//
// Expr is an immutable value: copies share the underlying tree. The
// arithmetic operators and function builders below fold constants and drop
// additive/multiplicative identities; Expr::make builds a node verbatim and
// is what the parser uses, so printed text re-parses to the same tree.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "sobolev/error.hpp"

namespace sobolev {

enum class Kind : std::uint8_t {
  constant,
  named_e,
  named_pi,
  var,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  exp,
  ln,
  sqrt,
  sin,
  cos,
  piecewise,
};

struct Node;
struct Piece;

class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double v);
  static Expr var();
  static Expr named_e();
  static Expr named_pi();

  // Raw node construction, no folding and no validation.
  static Expr make(Kind kind, std::vector<Expr> args, double value = 0.0,
                   std::vector<Piece> pieces = {});

  Kind kind() const noexcept;
  double constant_value() const noexcept;
  const std::vector<Expr>& args() const noexcept;
  const std::vector<Piece>& pieces() const noexcept;

  bool is_constant(double v) const noexcept {
    return kind() == Kind::constant && constant_value() == v;
  }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// One piece of a piecewise definition, active on [lo, hi).
struct Piece {
  double lo = 0.0;
  double hi = 1.0;
  Expr body;
};

struct Node {
  Kind kind = Kind::constant;
  double value = 0.0;
  std::vector<Expr> args;
  std::vector<Piece> pieces;
};

inline Expr Expr::make(Kind kind, std::vector<Expr> args, double value,
                       std::vector<Piece> pieces) {
  return Expr(std::make_shared<const Node>(
      Node{kind, value, std::move(args), std::move(pieces)}));
}

inline Expr::Expr() : Expr(make(Kind::constant, {}, 0.0)) {}
inline Expr Expr::constant(double v) { return make(Kind::constant, {}, v); }
inline Expr Expr::var() { return make(Kind::var, {}); }
inline Expr Expr::named_e() { return make(Kind::named_e, {}); }
inline Expr Expr::named_pi() { return make(Kind::named_pi, {}); }

inline Kind Expr::kind() const noexcept { return node_->kind; }
inline double Expr::constant_value() const noexcept { return node_->value; }
inline const std::vector<Expr>& Expr::args() const noexcept {
  return node_->args;
}
inline const std::vector<Piece>& Expr::pieces() const noexcept {
  return node_->pieces;
}

// ---------------------------------------------------------------------------
// Structural queries

inline bool depends_on_x(const Expr& e) {
  switch (e.kind()) {
    case Kind::var:
      return true;
    case Kind::piecewise:
      return true;
    default:
      return std::any_of(e.args().begin(), e.args().end(),
                         [](const Expr& a) { return depends_on_x(a); });
  }
}

inline bool contains_piecewise(const Expr& e) {
  if (e.kind() == Kind::piecewise) return true;
  return std::any_of(e.args().begin(), e.args().end(),
                     [](const Expr& a) { return contains_piecewise(a); });
}

namespace detail {
inline void collect_breakpoints(const Expr& e, std::vector<double>& out) {
  if (e.kind() == Kind::piecewise) {
    for (std::size_t i = 1; i < e.pieces().size(); ++i)
      out.push_back(e.pieces()[i].lo);
  }
  for (const auto& a : e.args()) collect_breakpoints(a, out);
}
}  // namespace detail

// Sorted, de-duplicated interior breakpoints of every piecewise node in e.
inline std::vector<double> breakpoints(const Expr& e) {
  std::vector<double> out;
  detail::collect_breakpoints(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Builders with constant folding

namespace detail {
inline bool is_const(const Expr& e) { return e.kind() == Kind::constant; }

inline Expr fold_or(double folded, Kind kind, const Expr& a, const Expr& b) {
  if (std::isfinite(folded)) return Expr::constant(folded);
  return Expr::make(kind, {a, b});
}
}  // namespace detail

inline Expr operator-(const Expr& a) {
  if (detail::is_const(a)) return Expr::constant(-a.constant_value());
  if (a.kind() == Kind::neg) return a.args()[0];
  return Expr::make(Kind::neg, {a});
}

inline Expr operator+(const Expr& a, const Expr& b) {
  if (detail::is_const(a) && detail::is_const(b))
    return detail::fold_or(a.constant_value() + b.constant_value(), Kind::add,
                           a, b);
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::make(Kind::add, {a, b});
}

inline Expr operator-(const Expr& a, const Expr& b) {
  if (detail::is_const(a) && detail::is_const(b))
    return detail::fold_or(a.constant_value() - b.constant_value(), Kind::sub,
                           a, b);
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return Expr::make(Kind::sub, {a, b});
}

inline Expr operator*(const Expr& a, const Expr& b) {
  if (detail::is_const(a) && detail::is_const(b))
    return detail::fold_or(a.constant_value() * b.constant_value(), Kind::mul,
                           a, b);
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  return Expr::make(Kind::mul, {a, b});
}

inline Expr operator/(const Expr& a, const Expr& b) {
  if (detail::is_const(a) && detail::is_const(b) && b.constant_value() != 0.0)
    return detail::fold_or(a.constant_value() / b.constant_value(), Kind::div,
                           a, b);
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return Expr::make(Kind::div, {a, b});
}

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

inline Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return Expr::constant(1.0);
  return Expr::make(Kind::pow, {base, exponent});
}
inline Expr pow(const Expr& base, double exponent) {
  return pow(base, Expr::constant(exponent));
}

inline Expr exp(const Expr& a) { return Expr::make(Kind::exp, {a}); }
inline Expr ln(const Expr& a) { return Expr::make(Kind::ln, {a}); }
inline Expr sqrt(const Expr& a) { return Expr::make(Kind::sqrt, {a}); }
inline Expr sin(const Expr& a) { return Expr::make(Kind::sin, {a}); }
inline Expr cos(const Expr& a) { return Expr::make(Kind::cos, {a}); }

// Validated piecewise construction. Pieces must tile [0,1] in order with
// strictly increasing breakpoints, and bodies must be piecewise-free.
inline Expr piecewise(std::vector<Piece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("piecewise: no pieces");
  if (pieces.front().lo != 0.0 || pieces.back().hi != 1.0)
    throw std::invalid_argument("piecewise: pieces must cover [0,1]");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lo < pieces[i].hi))
      throw std::invalid_argument("piecewise: breakpoints must increase");
    if (i + 1 < pieces.size() && pieces[i].hi != pieces[i + 1].lo)
      throw std::invalid_argument("piecewise: pieces must be contiguous");
    if (contains_piecewise(pieces[i].body))
      throw std::invalid_argument("piecewise: nested piecewise");
  }
  return Expr::make(Kind::piecewise, {}, 0.0, std::move(pieces));
}

// ---------------------------------------------------------------------------
// Evaluation

// Which piece owns a breakpoint. right is the [a,b) convention.
enum class Side { right, left };

namespace detail {

inline double int_power(double base, long n) {
  const bool invert = n < 0;
  unsigned long m = invert ? static_cast<unsigned long>(-n)
                           : static_cast<unsigned long>(n);
  double r = 1.0;
  while (m-- > 0) r *= base;
  return invert ? 1.0 / r : r;
}

// Real power: integer exponents by repeated product, otherwise only for
// base >= 0.
inline double real_power(double base, double p) {
  if (std::isfinite(p) && p == std::trunc(p) && std::abs(p) <= 64.0)
    return int_power(base, static_cast<long>(p));
  if (base > 0.0) return std::pow(base, p);
  if (base == 0.0) {
    if (p > 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline const Piece* find_piece(const std::vector<Piece>& pieces, double x,
                               Side side) {
  if (pieces.empty() || x < pieces.front().lo || x > pieces.back().hi)
    return nullptr;
  for (const auto& p : pieces) {
    if (side == Side::right) {
      if (x >= p.lo && x < p.hi) return &p;
    } else {
      if (x > p.lo && x <= p.hi) return &p;
    }
  }
  // x sits on the outer closed end.
  return side == Side::right ? &pieces.back() : &pieces.front();
}

}  // namespace detail

// IEEE evaluation; out-of-domain inputs give inf or NaN rather than throwing.
inline double evaluate(const Expr& e, double x, Side side = Side::right) {
  const auto arg = [&](std::size_t i) {
    return evaluate(e.args()[i], x, side);
  };
  switch (e.kind()) {
    case Kind::constant:
      return e.constant_value();
    case Kind::named_e:
      return std::numbers::e;
    case Kind::named_pi:
      return std::numbers::pi;
    case Kind::var:
      return x;
    case Kind::neg:
      return -arg(0);
    case Kind::add:
      return arg(0) + arg(1);
    case Kind::sub:
      return arg(0) - arg(1);
    case Kind::mul:
      return arg(0) * arg(1);
    case Kind::div:
      return arg(0) / arg(1);
    case Kind::pow:
      return detail::real_power(arg(0), arg(1));
    case Kind::exp:
      return std::exp(arg(0));
    case Kind::ln: {
      const double a = arg(0);
      if (a < 0.0) return std::numeric_limits<double>::quiet_NaN();
      return std::log(a);
    }
    case Kind::sqrt:
      return std::sqrt(arg(0));
    case Kind::sin:
      return std::sin(arg(0));
    case Kind::cos:
      return std::cos(arg(0));
    case Kind::piecewise: {
      const Piece* p = detail::find_piece(e.pieces(), x, side);
      if (!p) return std::numeric_limits<double>::quiet_NaN();
      return evaluate(p->body, x, side);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Checked evaluation: throws DomainError on a non-finite result.
inline double eval(const Expr& e, double x, Side side = Side::right) {
  const double v = evaluate(e, x, side);
  if (!std::isfinite(v)) throw DomainError(x, "non-finite value");
  return v;
}

// ---------------------------------------------------------------------------
// Symbolic differentiation

inline Expr derivative(const Expr& e) {
  const auto& a = e.args();
  switch (e.kind()) {
    case Kind::constant:
    case Kind::named_e:
    case Kind::named_pi:
      return Expr::constant(0.0);
    case Kind::var:
      return Expr::constant(1.0);
    case Kind::neg:
      return -derivative(a[0]);
    case Kind::add:
      return derivative(a[0]) + derivative(a[1]);
    case Kind::sub:
      return derivative(a[0]) - derivative(a[1]);
    case Kind::mul:
      return derivative(a[0]) * a[1] + a[0] * derivative(a[1]);
    case Kind::div:
      return derivative(a[0]) / a[1] - a[0] * derivative(a[1]) / (a[1] * a[1]);
    case Kind::pow: {
      const Expr& u = a[0];
      const Expr& v = a[1];
      if (!depends_on_x(v)) return v * pow(u, v - 1.0) * derivative(u);
      if (!depends_on_x(u)) return e * ln(u) * derivative(v);
      return e * (derivative(v) * ln(u) + v * derivative(u) / u);
    }
    case Kind::exp:
      return e * derivative(a[0]);
    case Kind::ln:
      return derivative(a[0]) / a[0];
    case Kind::sqrt:
      return derivative(a[0]) / (2.0 * e);
    case Kind::sin:
      return cos(a[0]) * derivative(a[0]);
    case Kind::cos:
      return -(sin(a[0]) * derivative(a[0]));
    case Kind::piecewise: {
      std::vector<Piece> out;
      out.reserve(e.pieces().size());
      for (const auto& p : e.pieces())
        out.push_back(Piece{p.lo, p.hi, derivative(p.body)});
      return Expr::make(Kind::piecewise, {}, 0.0, std::move(out));
    }
  }
  return Expr::constant(0.0);
}

inline Expr diff(const Expr& e, int order) {
  if (order < 0) throw std::invalid_argument("diff: negative order");
  Expr out = e;
  for (int i = 0; i < order; ++i) out = derivative(out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

namespace detail {

// Binding strength of the printed form; higher binds tighter.
inline int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::add:
    case Kind::sub:
      return 1;
    case Kind::mul:
    case Kind::div:
      return 2;
    case Kind::neg:
      return 3;
    case Kind::pow:
      return 4;
    case Kind::constant:
      return std::signbit(e.constant_value()) ? 3 : 5;
    default:
      return 5;
  }
}

inline void print_to(const Expr& e, std::string& out);

inline void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print_to(e, out);
  if (parens) out += ')';
}

inline void print_binary(const Expr& e, const char* op, int prec,
                         std::string& out) {
  const Expr& l = e.args()[0];
  const Expr& r = e.args()[1];
  print_wrapped(l, precedence(l) < prec, out);
  out += op;
  print_wrapped(r, precedence(r) <= prec, out);
}

inline void print_call(const Expr& e, const char* name, std::string& out) {
  out += name;
  out += '(';
  print_to(e.args()[0], out);
  out += ')';
}

inline void print_to(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::constant: {
      const double v = e.constant_value();
      if (std::signbit(v)) {
        out += '-';
        out += format_number(-v);
      } else {
        out += format_number(v);
      }
      return;
    }
    case Kind::named_e:
      out += 'e';
      return;
    case Kind::named_pi:
      out += "pi";
      return;
    case Kind::var:
      out += 'x';
      return;
    case Kind::neg: {
      out += '-';
      const Expr& a = e.args()[0];
      print_wrapped(a, precedence(a) < 3, out);
      return;
    }
    case Kind::add:
      print_binary(e, " + ", 1, out);
      return;
    case Kind::sub:
      print_binary(e, " - ", 1, out);
      return;
    case Kind::mul:
      print_binary(e, "*", 2, out);
      return;
    case Kind::div:
      print_binary(e, "/", 2, out);
      return;
    case Kind::pow: {
      const Expr& base = e.args()[0];
      const Expr& ex = e.args()[1];
      print_wrapped(base, precedence(base) <= 4, out);
      out += '^';
      print_wrapped(ex, precedence(ex) < 3, out);
      return;
    }
    case Kind::exp:
      print_call(e, "exp", out);
      return;
    case Kind::ln:
      print_call(e, "ln", out);
      return;
    case Kind::sqrt:
      print_call(e, "sqrt", out);
      return;
    case Kind::sin:
      print_call(e, "sin", out);
      return;
    case Kind::cos:
      print_call(e, "cos", out);
      return;
    case Kind::piecewise: {
      out += "piecewise(";
      bool first = true;
      for (const auto& p : e.pieces()) {
        if (!first) out += "; ";
        first = false;
        out += format_number(p.lo);
        out += ':';
        out += format_number(p.hi);
        out += " -> ";
        print_to(p.body, out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace detail

inline std::string print(const Expr& e) {
  std::string out;
  detail::print_to(e, out);
  return out;
}

}  // namespace sobolev
