#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "philap/errors.hpp"
#include "philap/period.hpp"
#include "philap/reflection.hpp"

using namespace philap;

namespace {

constexpr double kT_p3 = 5.6087284213018170;
constexpr double kC_p3 = 2.8043642106509085;
constexpr double kC_p15 = 0.0840413239478215;

}  // namespace

TEST_CASE("linear reflection curve is cos t + sin t") {
  const auto id = Nonlinearity::power(2.0);
  const SolutionCurve c = solve_reflection_ivp(id, 1.0);
  for (double t : {-2.0, -0.5, 0.3, 1.7, 4.0}) {
    CHECK(c.x(t) == doctest::Approx(std::cos(t) + std::sin(t)).epsilon(1e-12));
    CHECK(c.xprime(t) == doctest::Approx(c.x(-t)).epsilon(1e-12));
  }
  CHECK(verify_reflection(c, id, 1000) <= 1e-9);
}

TEST_CASE("zero reflection curve") {
  const auto f = Nonlinearity::power(3.0);
  const SolutionCurve c = solve_reflection_ivp(f, 0.0);
  CHECK(c.degenerate());
  CHECK(verify_reflection(c, f, 100) == 0.0);
}

TEST_CASE("cubic reflection curve") {
  const auto f = Nonlinearity::power(3.0);
  const SolutionCurve c = solve_reflection_ivp(f, 1.0);
  CHECK(c.period() == doctest::Approx(kT_p3).epsilon(1e-12));
  CHECK(verify_reflection(c, f, 1000) <= 1e-6);
}

TEST_CASE("reflection needs f(0) = 0") {
  const auto f = Nonlinearity::shifted(Nonlinearity::power(3.0), 0.5);
  CHECK_THROWS_AS(solve_reflection_ivp(f, 1.0), UnsupportedError);
}

TEST_CASE("closed-form c for the p-Laplacian") {
  CHECK(closed_form_c_plaplacian(3.0, -1.0, 1.0) == doctest::Approx(kC_p3).epsilon(1e-13));
  CHECK(closed_form_c_plaplacian(3.0, 0.0, kT_p3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(closed_form_c_plaplacian(1.5, -1.0, 1.0) == doctest::Approx(kC_p15).epsilon(1e-12));
  CHECK_THROWS_AS(closed_form_c_plaplacian(2.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(closed_form_c_plaplacian(3.0, 1.0, -1.0), DomainError);
  // Consistency with the closed period.
  const double c = closed_form_c_plaplacian(4.0, -0.5, 2.0);
  CHECK(period_plaplacian_closed(c, 1.0, 4.0).T == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("shooting for p = 3 on [-1, 1]") {
  const auto f = Nonlinearity::power(3.0);
  const ShootingResult r = shoot_bolzano(f, -1.0, 1.0, 2.0, 4.0);
  CHECK(r.c_star == doctest::Approx(kC_p3).epsilon(1e-10));
  CHECK(r.period == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::fabs(r.residual_bvp) <= 1e-8);
  CHECK(std::fabs(r.residual_station) <= 1e-8);
  CHECK(r.residual_reflection <= 1e-6);
  CHECK(r.oracle_rel_error <= 1e-6);
  CHECK(r.symmetric_interval);
  CHECK_FALSE(r.degenerate_bracket);
  CHECK(r.iterations > 0);
  CHECK(r.bracket_history.size() >= 2);
  const BracketStep last = r.bracket_history.back();
  CHECK(last.c_lo <= r.c_star + 1e-12);
  CHECK(last.c_hi >= r.c_star - 1e-12);
  REQUIRE(r.curve.has_value());
  CHECK(r.curve->x(0.0) == r.c_star);
  std::ostringstream report;
  r.write_report(report);
  CHECK(report.str().rfind("c_star=2.80436421065", 0) == 0);
}

TEST_CASE("shooting for p = 1.5 matches the closed form") {
  const auto f = Nonlinearity::power(1.5);
  const ShootingResult r = shoot_bolzano(f, -1.0, 1.0, 0.01, 1.0);
  CHECK(r.c_star == doctest::Approx(closed_form_c_plaplacian(1.5, -1.0, 1.0)).epsilon(1e-8));
  CHECK(std::fabs(r.residual_period) <= 1e-7 * 2.0);
}

TEST_CASE("shooting with a c-independent period reports a degenerate bracket") {
  const auto id = Nonlinearity::power(2.0);
  const ShootingResult r = shoot_bolzano(id, -std::numbers::pi, std::numbers::pi, 0.5, 2.0);
  CHECK(r.degenerate_bracket);
  CHECK(r.c_star == doctest::Approx(1.25));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("non-symmetric interval is flagged") {
  const ShootingResult r = shoot_bolzano(Nonlinearity::power(3.0), 0.0, 2.0, 2.0, 4.0);
  CHECK_FALSE(r.symmetric_interval);
  CHECK(r.c_star == doctest::Approx(kC_p3).epsilon(1e-10));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("shooting error paths") {
  const auto f = Nonlinearity::power(3.0);
  try {
    shoot_bolzano(f, -1.0, 1.0, 0.1, 0.5);
    FAIL("expected BracketError");
  } catch (const BracketError& e) {
    CHECK(e.f_lo() < 0.0);
    CHECK(e.f_hi() < 0.0);
  }
  CHECK_THROWS_AS(shoot_bolzano(f, 1.0, -1.0, 2.0, 4.0), DomainError);
  CHECK_THROWS_AS(shoot_bolzano(f, -1.0, 1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(shoot_bolzano(Nonlinearity::minkowski(), -1.0, 1.0, 0.3, 0.9), InfeasibleError);
}

TEST_CASE("bracket scan finds the single sign change") {
  const auto changes = scan_brackets(Nonlinearity::power(3.0), -1.0, 1.0, 0.1, 10.0, 21);
  REQUIRE(changes.size() == 1);
  CHECK(changes[0].c_lo < kC_p3);
  CHECK(changes[0].c_hi > kC_p3);
  CHECK(changes[0].rho_lo * changes[0].rho_hi < 0.0);
  // Infeasible points are skipped, not fatal.
  CHECK(scan_brackets(Nonlinearity::minkowski(), -1.0, 1.0, 0.01, 0.99, 9).size() <= 1);
}
