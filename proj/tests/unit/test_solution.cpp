#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "philap/errors.hpp"
#include "philap/period.hpp"
#include "philap/solution.hpp"

using namespace philap;

namespace {

constexpr double kPi = std::numbers::pi;

IVPSpec linear_spec(double a = 0.0) {
  IVPSpec s;
  s.a = a;
  s.c1 = 1.0;
  s.c2 = 1.0;
  return s;
}

IVPSpec mixed_spec() {
  // f = power(3), g = euclidean, starting downhill at a = 1.
  IVPSpec s;
  s.f_part = Nonlinearity::power(3.0);
  s.g_part = Nonlinearity::euclidean();
  s.a = 1.0;
  s.c1 = 0.4;
  s.c2 = -0.3;
  s.lambda = 1.5;
  return s;
}

}  // namespace

TEST_CASE("linear curve reproduces cos t + sin t") {
  const SolutionCurve c = solve_ivp(linear_spec());
  CHECK(c.period() == doctest::Approx(2 * kPi).epsilon(1e-13));
  CHECK(c.x_max() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.x_min() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.t_max() == doctest::Approx(kPi / 4).epsilon(1e-13));
  CHECK(c.t_min() == doctest::Approx(5 * kPi / 4).epsilon(1e-13));
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = -3.0 + 20.0 * i / 400.0;
    const State s = c.at(t);
    worst = std::max(worst, std::fabs(s.x - (std::cos(t) + std::sin(t))));
    worst = std::max(worst, std::fabs(s.xprime - (std::cos(t) - std::sin(t))));
  }
  CHECK(worst <= 1e-12);
  const State top = c.at(kPi / 4);
  CHECK(top.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::fabs(top.xprime) <= 1e-12);
  const State half = c.at(kPi);
  CHECK(half.x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(half.xprime == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::fabs(c.energy_residual(1.234)) <= 1e-10);
}

TEST_CASE("initial data and breakpoints") {
  for (const IVPSpec& spec : {linear_spec(0.7), mixed_spec(),
                              IVPSpec::particular_case(Nonlinearity::minkowski(), 0.3, 1.0, -2.0)}) {
    const SolutionCurve c = solve_ivp(spec);
    const State s0 = c.at(spec.a);
    CHECK(s0.x == spec.c1);
    CHECK(s0.xprime == spec.c2);
    CHECK(c.energy_residual(spec.a) == 0.0);
    const State top = c.at(c.t_max());
    const State bottom = c.at(c.t_min());
    CHECK(top.x == doctest::Approx(c.x_max()).epsilon(1e-9));
    CHECK(std::fabs(top.xprime) <= 1e-9);
    CHECK(bottom.x == doctest::Approx(c.x_min()).epsilon(1e-9));
    CHECK(std::fabs(bottom.xprime) <= 1e-9);
    CHECK(c.t_max() >= spec.a);
    CHECK(c.t_min() >= spec.a);
    CHECK(c.period_end() == doctest::Approx(spec.a + c.period()));
    const State later = c.at(spec.a + 5 * c.period());
    CHECK(later.x == doctest::Approx(spec.c1).epsilon(1e-9));
    CHECK(later.xprime == doctest::Approx(spec.c2).epsilon(1e-9));
  }
}

TEST_CASE("curve period equals the general quadrature period") {
  const IVPSpec spec = mixed_spec();
  CHECK(solve_ivp(spec).period() == doctest::Approx(period_general(spec).T).epsilon(1e-11));
  const auto m = Nonlinearity::minkowski();
  const SolutionCurve c = solve_ivp(IVPSpec::particular_case(m, 0.3, 1.0));
  CHECK(c.period() == doctest::Approx(5.8464732396639378).epsilon(1e-11));
  const Potential F(m);
  CHECK(c.x_max() == doctest::Approx(F.branch_inverse(Branch::plus, 2 * F(0.3))).epsilon(1e-13));
}

TEST_CASE("energy is conserved and the curve is periodic") {
  const SolutionCurve c = solve_ivp(IVPSpec::particular_case(Nonlinearity::minkowski(), 0.3, 1.0));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 3 * c.period());
  double worst_e = 0.0;
  double worst_p = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    worst_e = std::max(worst_e, std::fabs(c.energy_residual(t)));
    const State a = c.at(t);
    const State b = c.at(t + c.period());
    worst_p = std::max({worst_p, std::fabs(a.x - b.x), std::fabs(a.xprime - b.xprime)});
  }
  CHECK(worst_e <= 1e-8 * (1 + c.energy()));
  CHECK(worst_p <= 1e-9);
}

TEST_CASE("curve satisfies the differential equation") {
  const IVPSpec spec = mixed_spec();
  const SolutionCurve c = solve_ivp(spec);
  const Nonlinearity& g = spec.g_part;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(spec.a, spec.a + 2 * c.period());
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t = u(rng);
    const double outer = (g(c.xprime(t + h)) - g(c.xprime(t - h))) / (2 * h);
    worst = std::max(worst, std::fabs(outer + spec.lambda * spec.f_part(c.x(t))));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("monotone pieces cover one period") {
  const IVPSpec spec = mixed_spec();
  const SolutionCurve c = solve_ivp(spec);
  const auto pieces = c.pieces();
  REQUIRE(pieces.size() == 3);
  CHECK(pieces.front().t_begin == spec.a);
  CHECK(pieces.back().t_end == doctest::Approx(c.period_end()));
  CHECK_FALSE(pieces[0].increasing);  // c2 < 0
  CHECK(pieces[1].increasing);
  CHECK_FALSE(pieces[2].increasing);
  for (const auto& p : pieces) {
    const double m = 0.5 * (p.t_begin + p.t_end);
    CHECK((c.xprime(m) > 0.0) == p.increasing);
  }
}

TEST_CASE("time maps invert the curve on its monotone pieces") {
  const SolutionCurve c = solve_ivp(linear_spec());
  for (double r : {-1.2, -0.3, 0.0, 0.8, 1.3}) {
    CHECK(c.x(c.time_up(r)) == doctest::Approx(r).epsilon(1e-11));
    CHECK(c.x(c.time_down(r)) == doctest::Approx(r).epsilon(1e-11));
    CHECK(c.xprime(c.time_up(r)) >= 0.0);
    CHECK(c.xprime(c.time_down(r)) <= 0.0);
  }
  CHECK_THROWS_AS(c.time_up(1.5), RangeError);
}

TEST_CASE("zero data gives the constant curve") {
  IVPSpec spec;
  spec.c1 = 0.0;
  spec.c2 = 0.0;
  const SolutionCurve c = solve_ivp(spec);
  CHECK(c.degenerate());
  CHECK(std::isnan(c.period()));
  CHECK(c.x(12.5) == 0.0);
  CHECK(c.xprime(-3.0) == 0.0);
  CHECK(c.pieces().empty());
}

TEST_CASE("infeasible data is rejected") {
  CHECK_THROWS_AS(solve_ivp(IVPSpec::particular_case(Nonlinearity::minkowski(), 0.95, 1.0)), InfeasibleError);
  IVPSpec spec;
  spec.lambda = -1.0;
  spec.c1 = 1.0;
  CHECK_THROWS_AS(solve_ivp(spec), DomainError);
}

TEST_CASE("csv output") {
  const SolutionCurve c = solve_ivp(linear_spec());
  std::ostringstream out;
  c.write_csv(out, 0.0, 1.0, 3);
  const std::string text = out.str();
  CHECK(text.rfind("t,x,xprime,energy_residual\n0,1,1,0\n0.5,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  std::ostringstream again;
  c.write_csv(again, 0.0, 1.0, 3);
  CHECK(again.str() == text);
}

TEST_CASE("generalized sine of the identity pair is sin") {
  const auto id = Nonlinearity::power(2.0);
  const GeneralizedSine s(id, id);
  double worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double t = 4 * kPi * i / 500.0;
    worst = std::max(worst, std::fabs(s.sin(t) - std::sin(t)));
  }
  CHECK(worst <= 1e-12);
  CHECK(s.sin(kPi / 2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.arcsin_plus(0.0) == 0.0);
  CHECK(sin_gf(id, id, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
}

TEST_CASE("generalized sine right inverses") {
  const auto f = Nonlinearity::power(3.0);
  const GeneralizedSine s(f, f);
  const double T = s.curve().period();
  CHECK(T == doctest::Approx(6.0939839980923454).epsilon(1e-12));
  CHECK(s.arcsin_plus(s.curve().x_max()) == doctest::Approx(T / 4).epsilon(1e-12));
  CHECK(s.arcsin_plus(s.curve().x_max()) == doctest::Approx(1.5234959995230861).epsilon(1e-12));
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(s.curve().x_min(), s.curve().x_max());
  for (int i = 0; i < 50; ++i) {
    const double r = u(rng);
    CHECK(s.sin(s.arcsin_plus(r)) == doctest::Approx(r).epsilon(1e-10));
    const double t = s.arcsin_minus(r);
    CHECK(t >= s.curve().t_max() - 1e-12);
    CHECK(t <= s.curve().t_min() + 1e-12);
    CHECK(s.sin(t) == doctest::Approx(r).epsilon(1e-10));
  }
}
