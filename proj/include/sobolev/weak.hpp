#pragma once

// Weak-derivative verification: h is the order-α weak derivative of f when
// ∫ hφ = (-1)^α ∫ f φ^(α) for every test function φ vanishing, together
// with its derivatives, at both endpoints.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"
#include "sobolev/quad.hpp"
#include "sobolev/space.hpp"

namespace sobolev {

struct TestFunction {
  std::string id;
  Expr expression;
};

inline constexpr int max_weak_order = 3;
inline constexpr double weak_pass_tolerance = 1e-8;

// x^p (1-x)^q for p, q in {order+1, ..., order+4}, then the bump
// exp(-1/(x(1-x))). 17 functions.
inline std::vector<TestFunction> test_battery(int order) {
  if (order < 1 || order > max_weak_order)
    throw std::invalid_argument("test_battery: order must lie in [1, 3]");
  const Expr x = Expr::var();
  std::vector<TestFunction> out;
  for (int p = order + 1; p <= order + 4; ++p)
    for (int q = order + 1; q <= order + 4; ++q)
      out.push_back({"phi_" + std::to_string(p) + "_" + std::to_string(q),
                     pow(x, p) * pow(1.0 - x, q)});
  out.push_back({"bump", exp(-(1.0 / (x * (1.0 - x))))});
  return out;
}

// Value of a test function (or a derivative) at an endpoint. The bump and
// its derivatives are 0·∞ at the endpoint itself, so for non-finite values
// the point 1e-3 inside is used, where the bump underflows to exactly 0.
inline double endpoint_value(const Expr& e, double at) {
  const double v = evaluate(e, at);
  if (std::isfinite(v)) return v;
  return evaluate(e, at == 0.0 ? 1e-3 : 1.0 - 1e-3);
}

// Largest |φ^(j)| at 0 and 1 over j = 0..order-1.
inline double boundary_defect(const TestFunction& t, int order) {
  double worst = 0.0;
  Expr d = t.expression;
  for (int j = 0; j < order; ++j) {
    worst = std::max({worst, std::abs(endpoint_value(d, 0.0)),
                      std::abs(endpoint_value(d, 1.0))});
    d = derivative(d);
  }
  return worst;
}

struct WeakResidual {
  std::string id;
  double residual = 0.0;  // |∫hφ - (-1)^α ∫ f φ^(α)|
};

struct WeakCheckReport {
  int order = 1;
  std::vector<WeakResidual> residuals;
  double max_residual = 0.0;
  double scale = 0.0;  // largest |∫hφ| or |∫ f φ^(α)| over the battery
  bool pass = false;
};

inline WeakCheckReport weak_check(const Expr& f, const Expr& h, int order,
                                  const QuadConfig& cfg = {}) {
  WeakCheckReport report;
  report.order = order;
  const double sign = order % 2 == 0 ? 1.0 : -1.0;
  for (const TestFunction& t : test_battery(order)) {
    double lhs = 0.0;
    double rhs = 0.0;
    try {
      lhs = l2_pairing(h, t.expression, 0, cfg);
      rhs = sign * l2_pairing(f, diff(t.expression, order), order, cfg);
    } catch (const NumericError& e) {
      throw NumericError("weak_check: test function " + t.id + ": " + e.what());
    } catch (const DomainError& e) {
      throw NumericError("weak_check: test function " + t.id + ": " + e.what());
    }
    const double r = std::abs(lhs - rhs);
    report.residuals.push_back({t.id, r});
    report.max_residual = std::max(report.max_residual, r);
    report.scale = std::max({report.scale, std::abs(lhs), std::abs(rhs)});
  }
  report.pass =
      report.max_residual <= weak_pass_tolerance * (1.0 + report.scale);
  return report;
}

}  // namespace sobolev
