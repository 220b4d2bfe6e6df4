#pragma once

// Adaptive Gauss-Kronrod (G7/K15) quadrature on subintervals of [0,1].
//
// Only interior nodes are evaluated, so integrable endpoint singularities
// such as x^(-1/2) are handled and non-integrable ones such as 1/x are
// detected by watching the running total rather than by hitting the pole.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"

namespace sobolev {

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  double divergence_bound = 1e8;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(divergence_bound > 0.0) ||
        max_subdivisions < 1)
      throw std::invalid_argument(
          "QuadConfig: tolerances and budgets must be strictly positive");
  }

  double tolerance(double value) const {
    return std::max(abs_tol, rel_tol * std::abs(value));
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
  // Budget ran out while the running total kept growing, or it passed the
  // divergence bound.
  bool diverged = false;
};

namespace detail {

// Kronrod abscissae on [0,1) of the symmetric rule, largest first; the odd
// entries (1,3,5,7) are also the Gauss nodes.
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Panels narrower than this are not bisected further.
inline constexpr double min_panel_width = 1e-200;

// Below this width, relative to the panel position, the outer Kronrod
// nodes would round onto the panel ends.
inline bool resolvable(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return b - a >= min_panel_width &&
         b - a > 1024.0 * std::numeric_limits<double>::epsilon() * scale;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

template <class F>
double checked_call(const F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw DomainError(x, "non-finite integrand");
  return v;
}

template <class F>
Panel gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_call(f, center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double sum = checked_call(f, center - dx) + checked_call(f, center + dx);
    kronrod += kronrod_weights[i] * sum;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

// Running totals that keep growing at a steady rate mark a divergent
// integral; convergent singular integrands show geometrically shrinking
// increments instead.
inline bool growing_without_bound(const std::vector<double>& history,
                                  double tol) {
  const std::size_t n = history.size();
  if (n < 40) return false;
  const std::size_t q = n / 4;
  const double recent = history[n - 1] - history[n - 1 - q];
  const double earlier = history[n - 1 - q] - history[n - 1 - 2 * q];
  if (std::abs(recent) <= 1e3 * tol) return false;
  if (std::signbit(recent) != std::signbit(earlier)) return false;
  for (std::size_t i = n - q; i < n; ++i) {
    const double step = history[i] - history[i - 1];
    if (step != 0.0 && std::signbit(step) != std::signbit(recent)) return false;
  }
  return std::abs(recent) >= 0.5 * std::abs(earlier);
}

}  // namespace detail

// Adaptive integration of a callable over [a,b], starting from the given
// panel cuts (sorted, strictly inside (a,b)). The worst panel is bisected
// until the summed error estimate meets tolerance or the budget is spent.
template <class F>
QuadResult integrate_callable(const F& f, double a, double b,
                              const QuadConfig& cfg,
                              const std::vector<double>& cuts = {}) {
  cfg.validate();
  if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");

  using detail::Panel;
  const auto by_error = [](const Panel& l, const Panel& r) {
    return l.error < r.error;
  };

  std::vector<Panel> heap;
  double lo = a;
  for (double c : cuts) {
    if (c <= lo || c >= b) continue;
    heap.push_back(detail::gauss_kronrod(f, lo, c));
    lo = c;
  }
  heap.push_back(detail::gauss_kronrod(f, lo, b));
  std::make_heap(heap.begin(), heap.end(), by_error);

  double total = 0.0;
  double error = 0.0;
  for (const auto& p : heap) {
    total += p.value;
    error += p.error;
  }

  QuadResult out;
  std::vector<double> history{total};
  while (error > cfg.tolerance(total) && out.subdivisions < cfg.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!detail::resolvable(worst.a, worst.b) || mid <= worst.a ||
        mid >= worst.b) {
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    heap.pop_back();
    const Panel left = detail::gauss_kronrod(f, worst.a, mid);
    const Panel right = detail::gauss_kronrod(f, mid, worst.b);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++out.subdivisions;

    total += left.value + right.value - worst.value;
    error = std::max(0.0, error + left.error + right.error - worst.error);
    history.push_back(total);
    if (std::abs(total) > cfg.divergence_bound) {
      out.diverged = true;
      break;
    }
  }

  // Fixed left-to-right reduction so the result does not depend on heap order.
  std::sort(heap.begin(), heap.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  out.value = 0.0;
  out.error_estimate = 0.0;
  for (const auto& p : heap) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  out.converged = !out.diverged &&
                  out.error_estimate <= cfg.tolerance(out.value);
  if (!out.converged && !out.diverged)
    out.diverged = std::abs(out.value) > cfg.divergence_bound ||
                   detail::growing_without_bound(history, cfg.tolerance(out.value));
  return out;
}

// Integral of f over [a,b] with 0 <= a < b <= 1. Piecewise integrands are
// split at their breakpoints first. Throws DomainError when an interior node
// evaluates to a non-finite value.
inline QuadResult integrate(const Expr& f, double a, double b,
                            const QuadConfig& cfg = {}) {
  if (!(0.0 <= a && a < b && b <= 1.0))
    throw std::invalid_argument("integrate: requires 0 <= a < b <= 1");
  return integrate_callable([&f](double x) { return evaluate(f, x); }, a, b,
                            cfg, breakpoints(f));
}

// ---------------------------------------------------------------------------
// Divergence probe

enum class Verdict { convergent, divergent, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent:
      return "convergent";
    case Verdict::divergent:
      return "divergent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

struct ProbeReport {
  Verdict verdict = Verdict::inconclusive;
  // Integral over [2^-m, 1 - 2^-m] for m = 3, 4, ...
  std::vector<double> partial_sums;
  // Core panel followed by the left/right slivers added at each m.
  std::vector<QuadResult> pieces;
  std::string note;
};

namespace detail {
inline constexpr int probe_first_collar = 3;
inline constexpr int probe_last_collar = 30;
inline constexpr std::size_t probe_window = 8;
}  // namespace detail

// Classifies the improper integral of f over (0,1) from integrals on the
// shrinking collars [2^-m, 1-2^-m], m = 3..30. Divergent when a partial sum
// passes the divergence bound or the tails stop shrinking geometrically;
// convergent when the tails fall below abs_tol or decay geometrically;
// otherwise inconclusive. Heuristic by nature.
inline ProbeReport divergence_probe(const Expr& f, const QuadConfig& cfg = {}) {
  ProbeReport report;
  const auto fn = [&f](double x) { return evaluate(f, x); };
  const std::vector<double> cuts = breakpoints(f);
  const auto piece = [&](double a, double b) {
    QuadResult r = integrate_callable(fn, a, b, cfg, cuts);
    report.pieces.push_back(r);
    return r;
  };

  std::vector<double> tails;
  try {
    double lo = std::ldexp(1.0, -detail::probe_first_collar);
    double hi = 1.0 - lo;
    QuadResult core = piece(lo, hi);
    if (core.diverged) {
      report.verdict = Verdict::divergent;
      report.note = "core integral diverged";
      return report;
    }
    double sum = core.value;
    report.partial_sums.push_back(sum);
    for (int m = detail::probe_first_collar + 1; m <= detail::probe_last_collar;
         ++m) {
      const double nlo = std::ldexp(1.0, -m);
      const double nhi = 1.0 - nlo;
      const QuadResult left = piece(nlo, lo);
      const QuadResult right = piece(hi, nhi);
      if (left.diverged || right.diverged) {
        report.verdict = Verdict::divergent;
        report.note = "collar integral diverged";
        return report;
      }
      const double tail = left.value + right.value;
      sum += tail;
      tails.push_back(tail);
      report.partial_sums.push_back(sum);
      if (std::abs(sum) > cfg.divergence_bound) {
        report.verdict = Verdict::divergent;
        report.note = "partial sum exceeded divergence bound";
        return report;
      }
      lo = nlo;
      hi = nhi;
    }
  } catch (const DomainError& e) {
    report.verdict = Verdict::inconclusive;
    report.note = e.what();
    return report;
  }

  const std::size_t n = tails.size();
  const std::size_t w = std::min(detail::probe_window, n);
  double largest = 0.0;
  for (std::size_t i = n - w; i < n; ++i)
    largest = std::max(largest, std::abs(tails[i]));
  if (largest <= cfg.abs_tol) {
    report.verdict = Verdict::convergent;
    report.note = "tails below abs_tol";
    return report;
  }

  // Mean geometric decay rate of the tail magnitudes across the window.
  const double first = std::abs(tails[n - w]);
  const double last = std::abs(tails[n - 1]);
  if (first == 0.0 || last == 0.0) {
    report.verdict = Verdict::inconclusive;
    report.note = "vanishing tail in window";
    return report;
  }
  const double rate = std::pow(last / first, 1.0 / static_cast<double>(w - 1));
  if (rate <= 0.97) {
    report.verdict = Verdict::convergent;
    report.note = "tails decay geometrically";
  } else if (rate >= 0.985) {
    report.verdict = Verdict::divergent;
    report.note = "tails do not shrink";
  } else {
    report.verdict = Verdict::inconclusive;
    report.note = "tail decay rate near 1";
  }
  return report;
}

}  // namespace sobolev
