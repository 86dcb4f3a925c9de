#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "philap/errors.hpp"
#include "philap/nonlinearity.hpp"
#include "philap/numerics.hpp"

using namespace philap;

TEST_CASE("integrate_singular on endpoint singularities") {
  // Gap form keeps 1 - s^2 exact next to s = 1.
  const GapIntegrand arcsine = [](double, double, double g) { return 1.0 / std::sqrt(g * (2.0 - g)); };
  const QuadResult r = integrate_singular(arcsine, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  CHECK(r.err_estimate >= 0.0);

  const PlainIntegrand one = [](double) { return 1.0; };
  CHECK(integrate_singular(one, 0.0, 1.0, 1e-12).value == doctest::Approx(1.0).epsilon(1e-15));

  const GapIntegrand cubic = [](double s, double, double g) {
    // 1 - s^3 = g (1 + s + s^2).
    return std::pow(g * (1.0 + s + s * s), -2.0 / 3.0);
  };
  const double expect = gamma_fn(1.0 / 3.0) * gamma_fn(1.0 / 3.0) / (3.0 * gamma_fn(2.0 / 3.0));
  CHECK(integrate_singular(cubic, 0.0, 1.0, 1e-12).value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(1.76664).epsilon(1e-5));
}

TEST_CASE("plain integrand form reaches moderate accuracy on the arcsine") {
  const PlainIntegrand f = [](double s) { return 1.0 / std::sqrt(1.0 - s * s); };
  CHECK(integrate_singular(f, 0.0, 1.0, 1e-7).value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-7));
}

TEST_CASE("integrate_singular is symmetric under interval reflection") {
  const double a = 0.3;
  const double b = 2.1;
  const PlainIntegrand f = [](double s) { return std::exp(-s) * std::sqrt(s); };
  const PlainIntegrand g = [&](double s) { return std::exp(-(a + b - s)) * std::sqrt(a + b - s); };
  const double lhs = integrate_singular(f, a, b, 1e-13).value;
  const double rhs = integrate_singular(g, a, b, 1e-13).value;
  CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(lhs));
}

TEST_CASE("integrate_singular reports non-convergence") {
  const PlainIntegrand wild = [](double s) { return std::sin(1.0 / (s * s)) / (s * s); };
  CHECK_THROWS_AS(integrate_singular(wild, 0.0, 1.0, 1e-14, 6), ConvergenceError);
}

TEST_CASE("brent_solve on simple brackets") {
  CHECK(brent_root([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-14) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(brent_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const Potential F(Nonlinearity::minkowski());
  CHECK(brent_root([&](double x) { return F(x) - 0.2; }, 0.0, 0.99, 1e-14) ==
        doctest::Approx(0.6).epsilon(1e-13));
  const RootResult r = brent_solve([](double x) { return std::cos(x); }, 1.0, 2.0);
  CHECK(r.root == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  CHECK(r.iterations > 0);
}

TEST_CASE("brent_solve rejects brackets without a sign change") {
  try {
    brent_solve([](double x) { return x * x + 1.0; }, -1.0, 2.0);
    FAIL("expected BracketError");
  } catch (const BracketError& e) {
    CHECK(e.f_lo() == doctest::Approx(2.0));
    CHECK(e.f_hi() == doctest::Approx(5.0));
  }
}

TEST_CASE("brent_solve honours the iteration cap") {
  CHECK_THROWS_AS(brent_solve([](double x) { return std::exp(x) - 1.5; }, 0.0, 1.0,
                              {.abs_tol = 0.0, .rel_tol = 0.0, .max_iterations = 3}),
                  ConvergenceError);
}

TEST_CASE("gamma_fn matches known values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(1.0 / 3.0) == doctest::Approx(2.67893853470774763).epsilon(1e-14));
  for (double x : {0.1, 0.7, 2.5, 7.3, 15.0, 29.5}) {
    CAPTURE(x);
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("pairwise_sum keeps small terms") {
  std::vector<double> v(1 << 20, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(0.1 * (1 << 20)).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}
