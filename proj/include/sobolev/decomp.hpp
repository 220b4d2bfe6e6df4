#pragma once

// Orthogonal decompositions of W^{1,2}([0,1]).
//
//   bergman:  f = Pf + Qf, Pf the W^{1,2}-orthogonal projection onto the
//             affine functions {a + bx} = ker D², Qf = f - Pf.
//   boundary: f = P̃f + Q̃f, Q̃f = αeˣ + βe⁻ˣ matching f at 0 and 1,
//             P̃f = f - Q̃f vanishing on the boundary.
//
// All projections are computed from the normal equations; no closed-form
// example output is trusted.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"
#include "sobolev/quad.hpp"
#include "sobolev/space.hpp"

namespace sobolev {

// Normal-equation solve for the projection of f onto span(basis).
struct GramSystem {
  std::vector<Expr> basis;
  Eigen::MatrixXd matrix;  // inner(b_i, b_j, k)
  Eigen::VectorXd rhs;     // inner(f, b_i, k)
  Eigen::VectorXd coeffs;
  // |det G| / Π‖row_i‖, the Hadamard ratio; 1 for an orthogonal basis.
  double det_scale = 0.0;

  Expr combination() const {
    Expr out = Expr::constant(0.0);
    for (std::size_t i = 0; i < basis.size(); ++i)
      out = out + coeffs[static_cast<Eigen::Index>(i)] * basis[i];
    return out;
  }
};

inline constexpr double ill_conditioned_det_scale = 1e-12;

inline GramSystem gram_project(const Expr& f, const std::vector<Expr>& basis,
                               Regularity k, const QuadConfig& cfg = {}) {
  if (basis.empty()) throw PreconditionError("gram_project: empty basis");
  const auto n = static_cast<Eigen::Index>(basis.size());

  GramSystem sys;
  sys.basis = basis;
  sys.matrix.resize(n, n);
  sys.rhs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double g = inner(basis[i], basis[j], k, cfg);
      sys.matrix(i, j) = g;
      sys.matrix(j, i) = g;
    }
    sys.rhs[i] = inner(f, basis[i], k, cfg);
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  double row_product = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) row_product *= sys.matrix.row(i).norm();
  sys.det_scale = row_product > 0.0 ? std::abs(lu.determinant()) / row_product
                                    : 0.0;
  if (!(sys.det_scale > ill_conditioned_det_scale))
    throw IllConditionedError("gram_project: Gram matrix is near singular "
                              "(det_scale " +
                              std::to_string(sys.det_scale) + ")");
  sys.coeffs = lu.solve(sys.rhs);
  return sys;
}

// ---------------------------------------------------------------------------

enum class DecompositionKind { bergman, boundary };

inline const char* to_string(DecompositionKind k) {
  return k == DecompositionKind::bergman ? "bergman" : "boundary";
}

struct Decomposition {
  Expr p_part;
  Expr q_part;
  double ortho_residual = 0.0;  // |inner(p_part, q_part, 1)|
  DecompositionKind kind = DecompositionKind::bergman;
  // bergman: (a, b) of p_part = a + bx; boundary: (α, β) of q_part.
  std::vector<double> coefficients;
};

inline Expr affine(double intercept, double slope) {
  return intercept + slope * Expr::var();
}

// With check_membership set, f is first probed for W^{1,2} membership and a
// divergent verdict throws MembershipError.
inline Decomposition bergman_decompose(const Expr& f, const QuadConfig& cfg = {},
                                       bool check_membership = false) {
  if (check_membership) {
    const MembershipVerdict m = membership(f, cfg);
    if (m.in_W12 == Verdict::divergent)
      throw MembershipError(1, "bergman_decompose: f is not in W^{1,2}");
  }
  const GramSystem sys =
      gram_project(f, {Expr::constant(1.0), Expr::var()}, W12, cfg);
  Decomposition d;
  d.kind = DecompositionKind::bergman;
  d.coefficients = {sys.coeffs[0], sys.coeffs[1]};
  d.p_part = affine(sys.coeffs[0], sys.coeffs[1]);
  d.q_part = f - d.p_part;
  d.ortho_residual = std::abs(inner(d.p_part, d.q_part, W12, cfg));
  return d;
}

// ---------------------------------------------------------------------------
// η with D²η = q, normalized by η(0) = η'(0) = 0.

inline constexpr int eta_grid_points = 1025;

struct EtaReport {
  std::vector<double> grid;
  std::vector<double> eta_values;
  double eta1_at_1 = 0.0;  // η'(1)
  double eta_at_1 = 0.0;   // η(1)
  // η, η', η'' at 0 and at 1. η''(x) is q(x), NaN where q is singular.
  std::array<double, 3> at_0{};
  std::array<double, 3> at_1{};
};

// η(x) = ∫₀ˣ (x - t) q(t) dt = x·A(x) - B(x) with A = ∫₀ˣ q and B = ∫₀ˣ t q,
// both accumulated panel by panel over the grid.
inline EtaReport eta_recover(const Expr& q_part, const QuadConfig& cfg = {}) {
  constexpr int n = eta_grid_points;
  EtaReport r;
  r.grid.resize(n);
  r.eta_values.resize(n);
  for (int i = 0; i < n; ++i) r.grid[i] = static_cast<double>(i) / (n - 1);

  const std::vector<double> cuts = breakpoints(q_part);
  const auto q = [&q_part](double t) { return evaluate(q_part, t); };
  const auto tq = [&q_part](double t) { return t * evaluate(q_part, t); };
  const auto panel = [&](const auto& fn, double a, double b) {
    const QuadResult res = integrate_callable(fn, a, b, cfg, cuts);
    if (res.diverged)
      throw NumericError("eta_recover: integrand diverges on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
    if (!res.converged)
      throw NumericError("eta_recover: panel integral missed tolerance");
    return res.value;
  };

  double a_sum = 0.0;
  double b_sum = 0.0;
  r.eta_values[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    a_sum += panel(q, r.grid[i - 1], r.grid[i]);
    b_sum += panel(tq, r.grid[i - 1], r.grid[i]);
    r.eta_values[i] = r.grid[i] * a_sum - b_sum;
  }
  r.eta_at_1 = r.eta_values[n - 1];
  r.eta1_at_1 = a_sum;
  r.at_0 = {0.0, 0.0, evaluate(q_part, 0.0)};
  r.at_1 = {r.eta_at_1, r.eta1_at_1, evaluate(q_part, 1.0)};
  return r;
}

// ---------------------------------------------------------------------------
// Boundary split against span{eˣ, e⁻ˣ}

struct BoundarySplit {
  double alpha = 0.0;
  double beta = 0.0;
  Expr interior_part;  // f - αeˣ - βe⁻ˣ
  // |inner(interior_part, e^{±x}, 1)| / (‖f‖·‖e^{±x}‖).
  double ortho_exp = 0.0;
  double ortho_exp_neg = 0.0;

  Expr boundary_part() const;
};

inline Expr exp_x() { return exp(Expr::var()); }
inline Expr exp_neg_x() { return exp(-Expr::var()); }

inline Expr BoundarySplit::boundary_part() const {
  return alpha * exp_x() + beta * exp_neg_x();
}

inline double scaled_residual(double pairing, double na, double nb) {
  const double scale = na * nb;
  return scale > 0.0 ? std::abs(pairing) / scale : std::abs(pairing);
}

inline BoundarySplit boundary_decompose(const Expr& f,
                                        const QuadConfig& cfg = {}) {
  constexpr double e = std::numbers::e;
  const double f0 = eval(f, 0.0);
  const double f1 = eval(f, 1.0);
  BoundarySplit s;
  s.alpha = (f1 * e - f0) / (e * e - 1.0);
  s.beta = (f0 * e * e - f1 * e) / (e * e - 1.0);
  s.interior_part = f - s.boundary_part();

  const double nf = norm(f, W12, cfg);
  s.ortho_exp = scaled_residual(inner(s.interior_part, exp_x(), W12, cfg), nf,
                                norm(exp_x(), W12, cfg));
  s.ortho_exp_neg =
      scaled_residual(inner(s.interior_part, exp_neg_x(), W12, cfg), nf,
                      norm(exp_neg_x(), W12, cfg));
  return s;
}

inline Decomposition to_decomposition(const BoundarySplit& s,
                                      const QuadConfig& cfg = {}) {
  Decomposition d;
  d.kind = DecompositionKind::boundary;
  d.p_part = s.interior_part;
  d.q_part = s.boundary_part();
  d.coefficients = {s.alpha, s.beta};
  d.ortho_residual = std::abs(inner(d.p_part, d.q_part, W12, cfg));
  return d;
}

struct CrossCheck {
  double max_abs_diff = 0.0;
  BoundarySplit split;
  GramSystem gram;
};

// Projects f onto span{eˣ, e⁻ˣ} twice: by the closed-form boundary formulas
// and by the Gram normal equations. The coefficients must agree.
inline CrossCheck boundary_vs_gram_crosscheck(const Expr& f,
                                              const QuadConfig& cfg = {}) {
  CrossCheck c;
  c.split = boundary_decompose(f, cfg);
  c.gram = gram_project(f, {exp_x(), exp_neg_x()}, W12, cfg);
  c.max_abs_diff = std::max(std::abs(c.gram.coeffs[0] - c.split.alpha),
                            std::abs(c.gram.coeffs[1] - c.split.beta));
  return c;
}

// ---------------------------------------------------------------------------
// Riesz representation on W₀^{1,2}

struct RieszResult {
  double pairing = 0.0;          // inner(representer, g, 1)
  double functional_form = 0.0;  // ∫ (representer - representer'')·g
};

inline constexpr double boundary_tolerance = 1e-10;

inline RieszResult riesz_apply(const Expr& representer, const Expr& g,
                               const QuadConfig& cfg = {}) {
  const double g0 = evaluate(g, 0.0);
  const double g1 = evaluate(g, 1.0);
  if (!(std::abs(g0) <= boundary_tolerance && std::abs(g1) <= boundary_tolerance))
    throw PreconditionError(
        "riesz_apply: test function must vanish at 0 and 1 (g(0) = " +
        std::to_string(g0) + ", g(1) = " + std::to_string(g1) + ")");
  RieszResult r;
  r.pairing = inner(representer, g, W12, cfg);
  r.functional_form =
      l2_pairing(representer - diff(representer, 2), g, 0, cfg);
  return r;
}

}  // namespace sobolev
