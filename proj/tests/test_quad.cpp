#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "oracle/polynomial.hpp"
#include "sobolev/parse.hpp"
#include "sobolev/quad.hpp"

using namespace sobolev;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Expr to_expr(const oracle::Polynomial& p) {
  Expr out = Expr::constant(0.0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    out = out + p.coeffs()[i] * pow(Expr::var(), static_cast<double>(i));
  return out;
}

double value_of(const char* src, double a = 0.0, double b = 1.0) {
  const QuadResult r = integrate(parse(src), a, b);
  REQUIRE(r.converged);
  return r.value;
}

}  // namespace

TEST_CASE("integrals with closed forms", "[quad]") {
  CHECK_THAT(value_of("x^2"), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THAT(value_of("sin(pi*x)"), WithinAbs(2.0 / std::numbers::pi, 1e-14));
  CHECK_THAT(value_of("exp(x)"), WithinAbs(std::numbers::e - 1.0, 1e-14));
  CHECK_THAT(value_of("ln(x)"), WithinAbs(-1.0, 1e-9));
  CHECK_THAT(value_of("x^(-0.5)"), WithinAbs(2.0, 1e-8));
  CHECK_THAT(value_of("1/(1 + x^2)"), WithinAbs(std::numbers::pi / 4.0, 1e-14));
  CHECK_THAT(value_of("sin(50*x)^2"),
             WithinAbs(0.5 - std::sin(100.0) / 200.0, 1e-12));
  CHECK_THAT(value_of("x", 0.25, 0.75), WithinAbs(0.25, 1e-15));
}

TEST_CASE("non-integrable integrands are reported as divergent", "[quad]") {
  for (const char* src : {"1/(4*x)", "1/x^2", "1/(1 - x)"}) {
    INFO(src);
    const QuadResult r = integrate(parse(src), 0.0, 1.0);
    CHECK(r.diverged);
    CHECK_FALSE(r.converged);
  }
}

TEST_CASE("interior singularity raises a domain error", "[quad]") {
  CHECK_THROWS_AS(integrate(parse("1/(x - 0.5)"), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(integrate(parse("sqrt(x - 0.5)"), 0.0, 1.0), DomainError);
}

TEST_CASE("interval and configuration are validated", "[quad]") {
  CHECK_THROWS_AS(integrate(parse("x"), 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(integrate(parse("x"), -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate(parse("x"), 0.0, 1.1), std::invalid_argument);
  QuadConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate(parse("x"), 0.0, 1.0, bad), std::invalid_argument);
  bad = QuadConfig{};
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(integrate(parse("x"), 0.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("the rule is exact for low-degree polynomials", "[quad][property]") {
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int degree = 0; degree <= 13; ++degree) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (double& v : c) v = coef(rng);
    const oracle::Polynomial p(c);
    const QuadResult r = integrate(to_expr(p), 0.0, 1.0);
    INFO("degree " << degree);
    CHECK(r.converged);
    CHECK(r.subdivisions == 0);
    CHECK_THAT(r.value, WithinAbs(p.integrate(0.0, 1.0), 1e-13));
  }
}

TEST_CASE("integrals are additive over adjacent intervals", "[quad][property]") {
  for (const char* src : {"sin(3*x) + x^2", "exp(-x)*cos(7*x)", "sqrt(x)", "ln(x)",
                          "piecewise(0:0.4 -> x; 0.4:1 -> 1 - x)"}) {
    const Expr f = parse(src);
    const double whole = integrate(f, 0.0, 1.0).value;
    for (double c : {0.3, 0.5, 0.7}) {
      INFO(src << " split at " << c);
      const double parts = integrate(f, 0.0, c).value + integrate(f, c, 1.0).value;
      CHECK(std::abs(whole - parts) <= 1e-9 * (1.0 + std::abs(whole)));
    }
  }
}

TEST_CASE("integration is linear", "[quad][property]") {
  const Expr f = parse("sin(5*x)");
  const Expr g = parse("x^(-0.25)");
  std::mt19937 rng(3u);
  std::uniform_real_distribution<double> scalar(-4.0, 4.0);
  const double If = integrate(f, 0.0, 1.0).value;
  const double Ig = integrate(g, 0.0, 1.0).value;
  for (int t = 0; t < 20; ++t) {
    const double a = scalar(rng);
    const double b = scalar(rng);
    const double both = integrate(a * f + b * g, 0.0, 1.0).value;
    const double expect = a * If + b * Ig;
    CHECK(std::abs(both - expect) <= 1e-8 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("piecewise integrands are split at breakpoints", "[quad]") {
  const QuadResult r = integrate(parse("piecewise(0:0.3 -> 0; 0.3:1 -> 1)"), 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.subdivisions == 0);
  CHECK_THAT(r.value, WithinAbs(0.7, 1e-15));

  const QuadResult ramp =
      integrate(parse("piecewise(0:0.5 -> 0; 0.5:1 -> x - 0.5)"), 0.0, 1.0);
  CHECK(ramp.subdivisions == 0);
  CHECK_THAT(ramp.value, WithinAbs(0.125, 1e-15));
}

TEST_CASE("results are reproducible", "[quad]") {
  const Expr f = parse("x^(-0.7)*sin(x)");
  const QuadResult a = integrate(f, 0.0, 1.0);
  const QuadResult b = integrate(f, 0.0, 1.0);
  CHECK(a.value == b.value);
  CHECK(a.subdivisions == b.subdivisions);
}

TEST_CASE("divergence probe classifies endpoint singularities", "[quad][probe]") {
  const auto verdict = [](const char* src) {
    return divergence_probe(parse(src)).verdict;
  };
  CHECK(verdict("x^2") == Verdict::convergent);
  CHECK(verdict("x^(-0.5)") == Verdict::convergent);
  CHECK(verdict("x^(-0.9)") == Verdict::convergent);
  CHECK(verdict("ln(x)^2") == Verdict::convergent);
  CHECK(verdict("1/(4*x)") == Verdict::divergent);
  CHECK(verdict("1/x^2") == Verdict::divergent);
  CHECK(verdict("1/(1 - x)") == Verdict::divergent);

  const ProbeReport r = divergence_probe(parse("x^(-0.5)"));
  REQUIRE_FALSE(r.partial_sums.empty());
  CHECK_THAT(r.partial_sums.back(), WithinAbs(2.0, 1e-3));
  CHECK(std::string(to_string(Verdict::inconclusive)) == "inconclusive");
}
