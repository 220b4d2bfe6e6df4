#pragma once

// Registry of published numeric claims about W^{1,2}([0,1]), each recomputed
// with the space/decomp operations and classified as confirmed, refuted or
// inconclusive.
//
// Identities (a = b) are registered with claimed value 0 and computed value
// a - b. Affine outputs a + bx are compared as coefficient pairs (a, b).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sobolev/decomp.hpp"
#include "sobolev/error.hpp"
#include "sobolev/expr.hpp"
#include "sobolev/json_out.hpp"
#include "sobolev/parse.hpp"
#include "sobolev/quad.hpp"
#include "sobolev/space.hpp"

namespace sobolev {

enum class ClaimVerdict { confirmed, refuted, inconclusive };

inline const char* to_string(ClaimVerdict v) {
  switch (v) {
    case ClaimVerdict::confirmed:
      return "confirmed";
    case ClaimVerdict::refuted:
      return "refuted";
    case ClaimVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

inline constexpr double confirm_tolerance = 1e-6;
inline constexpr double refute_tolerance = 1e-3;

struct AuditEntry {
  std::string claim_id;
  std::string description;
  std::vector<double> paper_value;
  std::vector<double> computed_value;  // empty when the computation failed
  double abs_diff = 0.0;
  ClaimVerdict verdict = ClaimVerdict::inconclusive;
  std::string note;
};

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// abs_diff is the largest componentwise difference; the scale is
// 1 + max|paper_value|.
inline void classify(AuditEntry& e) {
  if (e.computed_value.size() != e.paper_value.size()) {
    e.verdict = ClaimVerdict::inconclusive;
    e.abs_diff = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double d = 0.0;
  for (std::size_t i = 0; i < e.paper_value.size(); ++i)
    d = std::max(d, std::abs(e.computed_value[i] - e.paper_value[i]));
  e.abs_diff = d;
  const double scale = 1.0 + max_abs(e.paper_value);
  if (!std::isfinite(d))
    e.verdict = ClaimVerdict::inconclusive;
  else if (d <= confirm_tolerance * scale)
    e.verdict = ClaimVerdict::confirmed;
  else if (d > refute_tolerance * scale)
    e.verdict = ClaimVerdict::refuted;
  else
    e.verdict = ClaimVerdict::inconclusive;
}

// Orders "Ex8c-n10" after "Ex8c-n9" and "Ex10a" after "Ex9b".
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  const auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      const auto na = std::stoull(std::string(a.substr(i, ie - i)));
      const auto nb = std::stoull(std::string(b.substr(j, je - j)));
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

struct Claim {
  std::string id;
  std::string description;
  std::vector<double> paper_value;
  std::function<std::vector<double>(const QuadConfig&)> compute;
};

namespace detail {

inline Expr ex(std::string_view src) { return parse(src); }

inline Expr exp_ax(double a) { return exp(a * Expr::var()); }

inline std::vector<Claim> claim_registry() {
  constexpr double e = std::numbers::e;
  const double s1 = std::sin(1.0);
  const double c1 = std::cos(1.0);
  std::vector<Claim> claims;
  const auto add = [&](std::string id, std::string desc,
                       std::vector<double> claimed, auto fn) {
    claims.push_back(Claim{std::move(id), std::move(desc), std::move(claimed),
                           std::function<std::vector<double>(const QuadConfig&)>(fn)});
  };

  add("Ex3a", "W12 norm of sin x equals 1", {1.0},
      [](const QuadConfig& c) { return std::vector{norm(ex("sin(x)"), W12, c)}; });
  add("Ex3b", "sin x and cos x are W12-orthogonal", {0.0},
      [](const QuadConfig& c) {
        return std::vector{inner(ex("sin(x)"), ex("cos(x)"), W12, c)};
      });
  add("Ex3c-1", "exp(x) and exp(-x) are W12-orthogonal (alpha*beta = -1)", {0.0},
      [](const QuadConfig& c) {
        return std::vector{inner(exp_ax(1.0), exp_ax(-1.0), W12, c)};
      });
  add("Ex3c-2", "exp(2x) and exp(-x/2) are W12-orthogonal (alpha*beta = -1)",
      {0.0}, [](const QuadConfig& c) {
        return std::vector{inner(exp_ax(2.0), exp_ax(-0.5), W12, c)};
      });
  add("Ex4a-minus", "W12/L2 norm ratio of exp(-x) is sqrt(2)", {std::sqrt(2.0)},
      [](const QuadConfig& c) {
        const Expr f = exp_ax(-1.0);
        return std::vector{norm(f, W12, c) / norm(f, L2, c)};
      });
  add("Ex4a-plus", "W12/L2 norm ratio of exp(x) is sqrt(2)", {std::sqrt(2.0)},
      [](const QuadConfig& c) {
        const Expr f = exp_ax(1.0);
        return std::vector{norm(f, W12, c) / norm(f, L2, c)};
      });
  add("Ex4b", "W12/L2 norm ratio of x is 2", {2.0}, [](const QuadConfig& c) {
    const Expr f = ex("x");
    return std::vector{norm(f, W12, c) / norm(f, L2, c)};
  });
  add("Ex6a", "W12 distance between cos x and sin x is sqrt(2)", {std::sqrt(2.0)},
      [](const QuadConfig& c) {
        return std::vector{dist(ex("cos(x)"), ex("sin(x)"), W12, c)};
      });
  add("Ex6b", "W12 distance between exp(x) and exp(-x) is sqrt(e^4-1)/e",
      {std::sqrt(std::pow(e, 4) - 1.0) / e}, [](const QuadConfig& c) {
        return std::vector{dist(exp_ax(1.0), exp_ax(-1.0), W12, c)};
      });
  add("Ex7a", "L2 distance between cos x and sin x is sqrt(1 - sin^2 1)",
      {std::sqrt(1.0 - s1 * s1)}, [](const QuadConfig& c) {
        return std::vector{dist(ex("cos(x)"), ex("sin(x)"), L2, c)};
      });
  add("Ex7b",
      "L2 distance between exp(x) and exp(-x) is sqrt(e^4-2e^2-1)/(e*sqrt(2))",
      {std::sqrt(std::pow(e, 4) - 2.0 * e * e - 1.0) / (e * std::sqrt(2.0))},
      [](const QuadConfig& c) {
        return std::vector{dist(exp_ax(1.0), exp_ax(-1.0), L2, c)};
      });

  // Bergman projection P onto {a + bx}; values are (a, b).
  const auto bergman_coeffs = [](std::string_view src) {
    return [src](const QuadConfig& c) {
      return bergman_decompose(ex(src), c).coefficients;
    };
  };
  add("Ex8a", "P(x) = x", {0.0, 1.0}, bergman_coeffs("x"));
  add("Ex8b", "P(x^2) = x - 1/6", {-1.0 / 6.0, 1.0}, bergman_coeffs("x^2"));
  for (int n = 1; n <= 6; ++n) {
    const double d = n * n + 3.0 * n + 2.0;
    static const char* monomials[] = {"x", "x^2", "x^3", "x^4", "x^5", "x^6"};
    add("Ex8c-n" + std::to_string(n),
        "P(x^n) = 6n/(n^2+3n+2) x - (2n-2)/(n^2+3n+2) at n = " + std::to_string(n),
        {-(2.0 * n - 2.0) / d, 6.0 * n / d}, bergman_coeffs(monomials[n - 1]));
  }
  add("Ex8d",
      "P(cos x) = (-12 + 6 sin 1 + 12 cos 1) x + 6 - 6 cos 1 - 2 sin 1",
      {6.0 - 6.0 * c1 - 2.0 * s1, -12.0 + 6.0 * s1 + 12.0 * c1},
      bergman_coeffs("cos(x)"));
  add("Ex8f", "P(exp x) = -6e x + 4e", {4.0 * e, -6.0 * e},
      bergman_coeffs("exp(x)"));
  add("Ex8f-ortho",
      "claimed parts (-6ex + 4e) and (exp(x) + 6ex - 4e) are W12-orthogonal",
      {0.0}, [](const QuadConfig& c) {
        return std::vector{inner(ex("4*e - 6*e*x"), ex("exp(x) + 6*e*x - 4*e"),
                                 W12, c)};
      });
  add("Ex8f-eta",
      "claimed eta = exp(x) + e x^3 - 2e x^2 has eta(0) = eta'(0) = 0",
      {0.0, 0.0}, [](const QuadConfig&) {
        const Expr eta = ex("exp(x) + e*x^3 - 2*e*x^2");
        return std::vector{eval(eta, 0.0), eval(diff(eta, 1), 0.0)};
      });
  {
    // D²η against the claimed Q part, sampled at five points.
    const Expr claimed_q = ex("exp(x) + 6*e*x - 4*e");
    std::vector<double> claimed;
    for (int i = 0; i <= 4; ++i) claimed.push_back(eval(claimed_q, i / 4.0));
    add("Ex8f-eta-d2",
        "second derivative of the claimed eta equals the claimed Q part "
        "(sampled at x = 0, 1/4, 1/2, 3/4, 1)",
        claimed, [](const QuadConfig&) {
          const Expr d2 = diff(ex("exp(x) + e*x^3 - 2*e*x^2"), 2);
          std::vector<double> out;
          for (int i = 0; i <= 4; ++i) out.push_back(eval(d2, i / 4.0));
          return out;
        });
  }

  add("Ex9a", "<x - 1/6, x^2 - x + 1/6>_L2 = -<1, 2x - 1>_L2", {0.0},
      [](const QuadConfig& c) {
        return std::vector{inner(ex("x - 1/6"), ex("x^2 - x + 1/6"), L2, c) +
                           inner(ex("1"), ex("2*x - 1"), L2, c)};
      });
  add("Ex9b",
      "<exp(ax), exp(bx)>_L2 = -<a exp(ax), b exp(bx)>_L2 at a = 2, b = -1/2",
      {0.0}, [](const QuadConfig& c) {
        const double a = 2.0, b = -0.5;
        return std::vector{inner(exp_ax(a), exp_ax(b), L2, c) +
                           inner(a * exp_ax(a), b * exp_ax(b), L2, c)};
      });

  add("Ex10a", "projection coefficient of exp(x) onto x^2 is 15e/23",
      {15.0 * e / 23.0}, [](const QuadConfig& c) {
        return std::vector{proj(ex("exp(x)"), ex("x^2"), W12, c).coef};
      });
  add("Ex10b", "projection coefficient of exp(x) onto exp(-x) is 0", {0.0},
      [](const QuadConfig& c) {
        return std::vector{proj(exp_ax(1.0), exp_ax(-1.0), W12, c).coef};
      });
  add("Ex10c", "projection coefficient of sin x onto cos x is 0", {0.0},
      [](const QuadConfig& c) {
        return std::vector{proj(ex("sin(x)"), ex("cos(x)"), W12, c).coef};
      });
  {
    const double samples[][2] = {{2.0, 1.0}, {0.5, -1.0}, {1.0, 2.0}, {-1.0, 3.0}};
    int idx = 0;
    for (const auto& ab : samples) {
      const double a = ab[0], b = ab[1];
      const double gamma =
          ((2.0 * a + 2.0 * b) * std::exp(a + b) - 2.0 * a * b * b - 2.0 * b) /
          ((a + b) * (b * b + 1.0) * (std::exp(2.0 * b) - 1.0));
      add("Ex10d-" + std::to_string(++idx),
          "projection coefficient gamma of exp(ax) onto exp(bx) at a = " +
              format_g17(a) + ", b = " + format_g17(b),
          {gamma}, [a, b](const QuadConfig& c) {
            return std::vector{proj(exp_ax(a), exp_ax(b), W12, c).coef};
          });
    }
  }

  add("Cor1", "W12 distance from x^2 to 2x^2 equals the W12 norm of x^2", {0.0},
      [](const QuadConfig& c) {
        const Expr f = ex("x^2");
        return std::vector{dist(f, 2.0 * f, W12, c) - norm(f, W12, c)};
      });

  // Boundary split: P~f vanishes at 0 and 1, Q~f matches f there.
  const auto prop12 = [](std::string_view src) {
    return [src](const QuadConfig& c) {
      const Expr f = ex(src);
      const BoundarySplit s = boundary_decompose(f, c);
      const Expr q = s.boundary_part();
      return std::vector{eval(s.interior_part, 0.0), eval(s.interior_part, 1.0),
                         eval(q, 0.0) - eval(f, 0.0), eval(q, 1.0) - eval(f, 1.0)};
    };
  };
  add("Prop12-1", "boundary split endpoint identities for f = x^2",
      {0.0, 0.0, 0.0, 0.0}, prop12("x^2"));
  add("Prop12-2", "boundary split endpoint identities for f = sin(pi x) + x",
      {0.0, 0.0, 0.0, 0.0}, prop12("sin(pi*x) + x"));

  return claims;
}

}  // namespace detail

inline std::vector<AuditEntry> audit(const QuadConfig& cfg = {}) {
  std::vector<Claim> claims = detail::claim_registry();
  std::sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
    return natural_less(a.id, b.id);
  });
  std::vector<AuditEntry> out;
  out.reserve(claims.size());
  for (const Claim& c : claims) {
    AuditEntry e;
    e.claim_id = c.id;
    e.description = c.description;
    e.paper_value = c.paper_value;
    try {
      e.computed_value = c.compute(cfg);
      classify(e);
    } catch (const std::exception& ex) {
      e.computed_value.clear();
      e.abs_diff = std::numeric_limits<double>::quiet_NaN();
      e.verdict = ClaimVerdict::inconclusive;
      e.note = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline const AuditEntry* find_entry(const std::vector<AuditEntry>& entries,
                                    std::string_view id) {
  for (const auto& e : entries)
    if (e.claim_id == id) return &e;
  return nullptr;
}

inline Json to_json(const AuditEntry& e) {
  const auto value = [](const std::vector<double>& v) -> Json {
    if (v.empty()) return nullptr;
    if (v.size() == 1) return v.front();
    return Json(v);
  };
  Json j;
  j["claim_id"] = e.claim_id;
  j["description"] = e.description;
  j["paper_value"] = value(e.paper_value);
  j["computed_value"] = value(e.computed_value);
  j["abs_diff"] = e.abs_diff;
  j["verdict"] = to_string(e.verdict);
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

}  // namespace sobolev
