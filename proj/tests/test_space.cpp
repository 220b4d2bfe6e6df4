#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oracle/polynomial.hpp"
#include "sobolev/parse.hpp"
#include "sobolev/space.hpp"

using namespace sobolev;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double e = std::numbers::e;
constexpr double pi = std::numbers::pi;

std::vector<Expr> family() {
  std::vector<Expr> out;
  for (const char* src : {"1", "x", "x^2", "x^3", "x^4", "exp(x)", "exp(-x)",
                          "sin(x)", "cos(x)"})
    out.push_back(parse(src));
  return out;
}

}  // namespace

TEST_CASE("inner products and norms", "[space]") {
  const Expr s = parse("sin(x)");
  const Expr c = parse("cos(x)");
  CHECK_THAT(norm(s, W12), WithinAbs(1.0, 1e-12));
  CHECK_THAT(inner(s, c, W12), WithinAbs(0.0, 1e-12));
  CHECK_THAT(inner(s, c, L2), WithinAbs(std::sin(1.0) * std::sin(1.0) / 2.0, 1e-14));
  CHECK_THAT(inner(parse("exp(2*x)"), parse("exp(-0.5*x)"), W12), WithinAbs(0.0, 1e-12));
  CHECK_THAT(inner(parse("x"), parse("x"), L2), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THAT(norm(parse("x"), W12), WithinAbs(2.0 / std::sqrt(3.0), 1e-14));
  CHECK_THAT(norm(parse("exp(x)"), W12),
             WithinRel(std::sqrt(2.0) * norm(parse("exp(x)"), L2), 1e-13));

  // Second-order: sin'' = -sin, so the k=2 norm of sin is sqrt(1 + ∫sin²).
  const double ss = (1.0 - std::sin(2.0) / 2.0) / 2.0;
  CHECK_THAT(norm(s, Regularity(2)), WithinAbs(std::sqrt(1.0 + ss), 1e-12));
}

TEST_CASE("inner agrees with exact polynomial integration", "[space][oracle]") {
  using oracle::Polynomial;
  const Polynomial p({1.0, -2.0, 0.5, 3.0});
  const Polynomial q({0.0, 1.0, -1.0, 0.0, 2.0});
  const auto to_expr = [](const Polynomial& poly) {
    Expr out = Expr::constant(0.0);
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
      out = out + poly.coeffs()[i] * pow(Expr::var(), static_cast<double>(i));
    return out;
  };
  CHECK_THAT(inner(to_expr(p), to_expr(q), W12), WithinAbs(oracle::w12_inner(p, q), 1e-13));
  CHECK_THAT(inner(to_expr(p), to_expr(q), L2),
             WithinAbs((p * q).integrate(0.0, 1.0), 1e-13));
}

TEST_CASE("distances", "[space]") {
  CHECK_THAT(dist(parse("cos(x)"), parse("sin(x)"), W12), WithinAbs(std::sqrt(2.0), 1e-12));
  CHECK_THAT(dist(parse("exp(x)"), parse("exp(-x)"), W12),
             WithinAbs(std::sqrt(e * e * e * e - 1.0) / e, 1e-12));
  CHECK_THAT(dist(parse("cos(x)"), parse("sin(x)"), L2), WithinAbs(std::cos(1.0), 1e-12));
  CHECK_THAT(dist(parse("exp(x)"), parse("exp(-x)"), L2),
             WithinAbs(std::sqrt(e * e * e * e - 4.0 * e * e - 1.0) / (e * std::sqrt(2.0)),
                       1e-12));
  const Expr f = parse("x^2");
  CHECK_THAT(dist(f, 2.0 * f, W12), WithinAbs(norm(f, W12), 1e-12));
}

TEST_CASE("angles", "[space]") {
  const Expr f = parse("x^2");
  CHECK_THAT(cos_angle(f, 3.0 * f, W12), WithinAbs(1.0, 1e-12));
  CHECK_THAT(cos_angle(f, -3.0 * f, W12), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(cos_angle(parse("sin(x)"), parse("cos(x)"), W12), WithinAbs(0.0, 1e-12));
  CHECK_THROWS_AS(cos_angle(parse("0"), f, W12), PreconditionError);
}

TEST_CASE("projection onto a line", "[space]") {
  CHECK_THAT(proj(parse("exp(x)"), parse("x^2"), W12).coef, WithinAbs(15.0 * e / 23.0, 1e-12));
  CHECK_THAT(proj(parse("exp(x)"), parse("exp(-x)"), W12).coef, WithinAbs(0.0, 1e-12));
  CHECK_THAT(proj(parse("sin(x)"), parse("cos(x)"), W12).coef, WithinAbs(0.0, 1e-12));
  const Projection self = proj(parse("sin(x)"), parse("sin(x)"), W12);
  CHECK_THAT(self.coef, WithinAbs(1.0, 1e-14));
  CHECK_THAT(eval(self.expression, 0.4), WithinAbs(std::sin(0.4), 1e-14));
  CHECK_THROWS_AS(proj(parse("x"), parse("0"), W12), PreconditionError);
}

TEST_CASE("divergent components raise membership errors", "[space]") {
  try {
    (void)norm(parse("sqrt(x)"), W12);
    FAIL("expected MembershipError");
  } catch (const MembershipError& err) {
    CHECK(err.order() == 1);
  }
  CHECK_THROWS_AS(norm(parse("1/x"), L2), MembershipError);
  CHECK_NOTHROW(norm(parse("sqrt(x)"), L2));
  CHECK_THROWS_AS(Regularity(7), std::invalid_argument);
  CHECK_THROWS_AS(Regularity(-1), std::invalid_argument);
}

TEST_CASE("membership verdicts", "[space]") {
  const MembershipVerdict root = membership(parse("sqrt(x)"));
  CHECK(root.in_L2 == Verdict::convergent);
  CHECK(root.in_W12 == Verdict::divergent);

  const MembershipVerdict sq = membership(parse("x^2"));
  CHECK(sq.in_L2 == Verdict::convergent);
  CHECK(sq.in_W12 == Verdict::convergent);

  const MembershipVerdict frac = membership(parse("x^0.6"));
  CHECK(frac.in_L2 == Verdict::convergent);
  CHECK(frac.in_W12 == Verdict::convergent);

  const MembershipVerdict step = membership(parse("piecewise(0:0.5 -> 0; 0.5:1 -> 1)"));
  CHECK(step.in_L2 == Verdict::convergent);
  CHECK(step.in_W12 == Verdict::inconclusive);
  CHECK_FALSE(step.notes.empty());

  const MembershipVerdict ramp = membership(parse("piecewise(0:0.5 -> 0; 0.5:1 -> x - 0.5)"));
  CHECK(ramp.in_W12 == Verdict::convergent);

  for (const char* src : {"sqrt(x)", "x^2", "x^0.6", "1/x", "x^(-0.4)", "ln(x)"}) {
    const MembershipVerdict m = membership(parse(src));
    INFO(src);
    if (m.in_W12 == Verdict::convergent) CHECK(m.in_L2 == Verdict::convergent);
  }
}

TEST_CASE("Hölder quotient", "[space]") {
  CHECK_THAT(holder_quotient(parse("sqrt(x)"), 0.5), WithinAbs(1.0, 1e-6));
  CHECK(holder_quotient(parse("3"), 0.5) == 0.0);
  CHECK_THAT(holder_quotient(parse("x"), 1.0), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(holder_quotient(parse("x"), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_quotient(parse("x"), 1.5), std::invalid_argument);
}

TEST_CASE("Cauchy-Schwarz and triangle inequalities", "[space][property]") {
  const std::vector<Expr> fs = family();
  for (int k = 0; k <= 2; ++k) {
    const Regularity r(k);
    for (const Expr& f : fs)
      for (const Expr& g : fs) {
        INFO(print(f) << ", " << print(g) << ", k = " << k);
        const double nf = norm(f, r);
        const double ng = norm(g, r);
        CHECK(std::abs(inner(f, g, r)) <= nf * ng * (1.0 + 1e-12) + 1e-14);
        CHECK(norm(f + g, r) <= nf + ng + 1e-12);
      }
  }
}

TEST_CASE("norms and distances grow with regularity", "[space][property]") {
  const std::vector<Expr> fs = family();
  for (int k = 1; k <= 4; ++k) {
    for (const Expr& f : fs) {
      CHECK(norm(f, Regularity(k - 1)) <= norm(f, Regularity(k)) + 1e-10);
      for (const Expr& g : fs) {
        INFO(print(f) << ", " << print(g) << ", k = " << k);
        CHECK(dist(f, g, Regularity(k - 1)) <= dist(f, g, Regularity(k)) + 1e-10);
      }
    }
  }
}

TEST_CASE("exponentials scale by sqrt(1 + alpha^2)", "[space][property]") {
  for (double a : {-2.0, -1.0, 0.5, 1.0, 3.0}) {
    const Expr f = exp(a * Expr::var());
    INFO("alpha = " << a);
    CHECK(std::abs(norm(f, W12) - std::sqrt(1.0 + a * a) * norm(f, L2)) <= 1e-9);
  }
}

TEST_CASE("constants have equal L2 and W12 norms", "[space][property]") {
  for (double c : {-3.0, 0.0, 0.25, 1.0, 7.5}) {
    const Expr f = Expr::constant(c);
    CHECK(std::abs(norm(f, W12) - norm(f, L2)) <= 1e-12);
    CHECK_THAT(norm(f, L2), WithinAbs(std::abs(c), 1e-14));
  }
}

TEST_CASE("homogeneity of inner product and distance", "[space][property]") {
  for (const Expr& f : {parse("x^2"), parse("sin(x) + 1"), parse("exp(-x)")}) {
    const double n = norm(f, W12);
    for (double lambda : {-2.0, -1.0, 0.5, 2.0, 3.0}) {
      INFO(print(f) << ", lambda = " << lambda);
      CHECK(std::abs(inner(f, lambda * f, W12) - lambda * n * n) <= 1e-9);
      CHECK(std::abs(dist(f, lambda * f, W12) - std::abs(1.0 - lambda) * n) <= 1e-9);
    }
    for (double lambda : {-1.0, 3.0}) CHECK(dist(f, lambda * f, W12) > n);
    for (double lambda : {0.5, 1.5}) CHECK(dist(f, lambda * f, W12) < n);
  }
}

TEST_CASE("orthogonality transfers between L2 and W12", "[space][property]") {
  // W12-orthogonal pair: L2 pairing equals minus the derivative pairing.
  {
    const Expr f = parse("sin(x)");
    const Expr g = parse("cos(x)");
    REQUIRE(std::abs(inner(f, g, W12)) <= 1e-12);
    CHECK(std::abs(inner(f, g, L2) + inner(diff(f, 1), diff(g, 1), L2)) <= 1e-9);
  }
  // L2-orthogonal pair: W12 pairing equals the derivative pairing, here 2.
  {
    const Expr f = parse("x - 1/2");
    const Expr g = parse("20*x^3 - 30*x^2 + 12*x - 1");
    REQUIRE(std::abs(inner(f, g, L2)) <= 1e-12);
    CHECK_THAT(inner(f, g, W12), WithinAbs(2.0, 1e-12));
    CHECK(std::abs(inner(f, g, W12) - inner(diff(f, 1), diff(g, 1), L2)) <= 1e-9);
  }
  // Orthogonal in L2 together with their derivatives: orthogonal in W12.
  {
    const Expr f = parse("sin(2*pi*x)");
    const Expr g = parse("cos(2*pi*x)");
    REQUIRE(std::abs(inner(f, g, L2)) <= 1e-12);
    REQUIRE(std::abs(inner(diff(f, 1), diff(g, 1), L2)) <= 1e-10);
    CHECK(std::abs(inner(f, g, W12)) <= 1e-9);
  }
}

TEST_CASE("functions vanishing at both ends are orthogonal to their derivatives",
          "[space][property]") {
  for (int a : {2, 3})
    for (int b : {2, 3}) {
      const Expr f = pow(Expr::var(), a) * pow(Expr::var() - 1.0, b);
      INFO("a = " << a << ", b = " << b);
      CHECK(std::abs(inner(f, diff(f, 1), W12)) <= 1e-9);
    }
  CHECK(std::abs(inner(parse("sin(pi*x)"), parse("pi*cos(pi*x)"), W12)) <= 1e-9);
}

TEST_CASE("projection algebra", "[space][property]") {
  const Expr g = parse("x^2 + 1");
  const Expr f1 = parse("exp(x)");
  const Expr f2 = parse("sin(3*x)");
  const double c1 = proj(f1, g, W12).coef;
  const double c2 = proj(f2, g, W12).coef;
  CHECK(std::abs(proj(f1 + f2, g, W12).coef - (c1 + c2)) <= 1e-10);
  for (double a : {-2.0, 0.5, 4.0}) {
    CHECK(std::abs(proj(a * f1, g, W12).coef - a * c1) <= 1e-10);
    const Projection scaled = proj(f1, a * g, W12);
    const Projection plain = proj(f1, g, W12);
    for (double x : {0.0, 0.3, 0.8, 1.0})
      CHECK(std::abs(eval(scaled.expression, x) - eval(plain.expression, x)) <= 1e-10);
  }
  CHECK(std::abs(proj(parse("exp(x)"), parse("exp(-x)"), W12).coef) <= 1e-12);
}
