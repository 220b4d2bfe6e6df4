#pragma once

// Geometry of W^{k,2}([0,1]): inner products, norms, distances, angles,
// membership verdicts, projection onto one function, and a Hölder-quotient
// diagnostic.
//
// The order-k inner product is the sum of L² pairings of derivatives of
// orders 0..k, so k = 0 is L² and k = 1 is the usual W^{1,2} product
// ∫ fg + f'g'.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"
#include "sobolev/quad.hpp"

namespace sobolev {

// Sobolev regularity index k; 0 <= k <= 6.
class Regularity {
 public:
  static constexpr int max_order = 6;

  constexpr explicit Regularity(int k) : k_(k) {
    if (k < 0 || k > max_order)
      throw std::invalid_argument("Regularity: k must lie in [0, 6]");
  }
  constexpr int k() const noexcept { return k_; }
  friend constexpr bool operator==(Regularity, Regularity) = default;

 private:
  int k_;
};

inline constexpr Regularity L2{0};
inline constexpr Regularity W12{1};

// ∫₀¹ f·g dx, throwing when the integral diverges or misses tolerance.
// order only labels the error.
inline double l2_pairing(const Expr& f, const Expr& g, int order,
                         const QuadConfig& cfg = {}) {
  const QuadResult r = integrate(f * g, 0.0, 1.0, cfg);
  if (r.diverged)
    throw MembershipError(order, "integral of derivative order " +
                                     std::to_string(order) + " diverges");
  if (!r.converged)
    throw NumericError("integral of derivative order " + std::to_string(order) +
                       " did not reach tolerance (error estimate " +
                       std::to_string(r.error_estimate) + ")");
  return r.value;
}

inline double inner(const Expr& f, const Expr& g, Regularity k,
                    const QuadConfig& cfg = {}) {
  Expr df = f;
  Expr dg = g;
  double sum = 0.0;
  for (int j = 0; j <= k.k(); ++j) {
    if (j > 0) {
      df = derivative(df);
      dg = derivative(dg);
    }
    sum += l2_pairing(df, dg, j, cfg);
  }
  return sum;
}

inline double norm(const Expr& f, Regularity k, const QuadConfig& cfg = {}) {
  return std::sqrt(std::max(0.0, inner(f, f, k, cfg)));
}

inline double dist(const Expr& f, const Expr& g, Regularity k,
                   const QuadConfig& cfg = {}) {
  return norm(f - g, k, cfg);
}

// Cosine of the angle between f and g. Not clamped to [-1,1].
inline double cos_angle(const Expr& f, const Expr& g, Regularity k,
                        const QuadConfig& cfg = {}) {
  const double nf = norm(f, k, cfg);
  const double ng = norm(g, k, cfg);
  if (nf == 0.0 || ng == 0.0)
    throw PreconditionError("cos_angle: zero-norm argument");
  return inner(f, g, k, cfg) / (nf * ng);
}

struct Projection {
  double coef = 0.0;
  Expr expression;  // coef·g
};

// Projection of f onto the line spanned by g.
inline Projection proj(const Expr& f, const Expr& g, Regularity k,
                       const QuadConfig& cfg = {}) {
  const double gg = inner(g, g, k, cfg);
  if (!(gg > 0.0)) throw PreconditionError("proj: zero-norm direction");
  const double coef = inner(f, g, k, cfg) / gg;
  return Projection{coef, coef * g};
}

// ---------------------------------------------------------------------------
// Membership

struct MembershipVerdict {
  Verdict in_L2 = Verdict::inconclusive;
  Verdict in_W12 = Verdict::inconclusive;
  ProbeReport l2_probe;         // ∫ f²
  ProbeReport derivative_probe;  // ∫ (f')²
  std::vector<std::string> notes;
};

// Largest jump |f(b⁻) - f(b⁺)| over the breakpoints of f, 0 if none.
inline double largest_jump(const Expr& f) {
  double jump = 0.0;
  for (double b : breakpoints(f)) {
    const double left = evaluate(f, b, Side::left);
    const double right = evaluate(f, b, Side::right);
    const double d = std::abs(left - right);
    if (!std::isfinite(d)) return d;
    jump = std::max(jump, d / (1.0 + std::abs(right)));
  }
  return jump;
}

inline MembershipVerdict membership(const Expr& f, const QuadConfig& cfg = {}) {
  MembershipVerdict out;
  out.l2_probe = divergence_probe(f * f, cfg);
  out.in_L2 = out.l2_probe.verdict;

  const double jump = largest_jump(f);
  if (!(jump <= 1e-10)) {
    out.notes.push_back(
        "discontinuous at a breakpoint; classical derivative is not the weak "
        "derivative");
    out.in_W12 = out.in_L2 == Verdict::divergent ? Verdict::divergent
                                                 : Verdict::inconclusive;
    return out;
  }

  const Expr df = derivative(f);
  out.derivative_probe = divergence_probe(df * df, cfg);
  const Verdict d = out.derivative_probe.verdict;
  if (out.in_L2 == Verdict::divergent || d == Verdict::divergent)
    out.in_W12 = Verdict::divergent;
  else if (out.in_L2 == Verdict::convergent && d == Verdict::convergent)
    out.in_W12 = Verdict::convergent;
  else
    out.in_W12 = Verdict::inconclusive;
  return out;
}

// ---------------------------------------------------------------------------
// Hölder quotient

inline constexpr int holder_grid_points = 201;

// max |f(x)-f(y)| / |x-y|^exponent over all pairs of a 201-point uniform grid.
// A lower bound for the Hölder constant, not a certified supremum.
inline double holder_quotient(const Expr& f, double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0))
    throw std::invalid_argument("holder_quotient: exponent must lie in (0,1]");
  constexpr int n = holder_grid_points;
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(i) / (n - 1);
    fs[i] = eval(f, xs[i]);
  }
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      best = std::max(best, std::abs(fs[i] - fs[j]) /
                                std::pow(xs[j] - xs[i], exponent));
  return best;
}

}  // namespace sobolev
