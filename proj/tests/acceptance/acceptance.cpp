// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "philap/errors.hpp"
#include "philap/oracle.hpp"
#include "philap/period.hpp"
#include "philap/reflection.hpp"
#include "philap/sensitivity.hpp"
#include "philap/solution.hpp"
#include "philap/sweep.hpp"

using namespace philap;

namespace {

// Pinned tolerances.
constexpr double kTolAnchor = 1e-8;
constexpr double kTolConsistency = 1e-8;
constexpr double kTolOracle = 1e-6;
constexpr double kOracleStepDivisor = 20000.0;
constexpr double kTolScaling = 1e-10;
constexpr double kTolSensitivityZero = 1e-8;
constexpr double kFdStep = 1e-5;
constexpr double kTolFd = 1e-5;
constexpr double kTolEnergy = 1e-8;
constexpr double kTolPeriodicity = 1e-9;
constexpr double kTolShootC = 1e-8;
constexpr double kTolBvp = 1e-8;
constexpr double kTolReflection = 1e-6;
constexpr double kTolReflectionLinear = 1e-9;
constexpr double kTolSine = 1e-9;
constexpr double kMinOrderRatio = 8.0;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::vector<double> kPowerP = {1.5, 2.0, 3.0, 4.0};
const std::vector<double> kGridC = {0.5, 1.0, 2.0};
const std::vector<double> kGridL = {0.5, 1.0, 2.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

Outcome anchor() {
  double worst = 0.0;
  const auto f = Nonlinearity::power(2.0);
  for (double c : {0.1, 1.0, 5.0}) {
    for (auto m : {PeriodMethod::general_quadrature, PeriodMethod::particular_quadrature,
                   PeriodMethod::odd_homogeneous, PeriodMethod::plaplacian_closed}) {
      worst = std::max(worst, rel(period_by_method(m, f, c, 1.0).T, kTwoPi));
    }
  }
  return {worst <= kTolAnchor, "max rel error vs 2pi " + sci(worst)};
}

Outcome consistency() {
  double worst = 0.0;
  for (double p : kPowerP) {
    const auto f = Nonlinearity::power(p);
    for (double c : kGridC) {
      for (double lam : kGridL) {
        std::vector<double> T;
        for (auto m : {PeriodMethod::general_quadrature, PeriodMethod::particular_quadrature,
                       PeriodMethod::odd_homogeneous, PeriodMethod::plaplacian_closed}) {
          T.push_back(period_by_method(m, f, c, lam).T);
        }
        for (std::size_t i = 0; i < T.size(); ++i) {
          for (std::size_t j = i + 1; j < T.size(); ++j) worst = std::max(worst, rel(T[i], T[j]));
        }
      }
    }
  }
  return {worst <= kTolConsistency, "max pairwise rel disagreement " + sci(worst)};
}

Outcome formula_vs_oracle() {
  double worst = 0.0;
  const std::vector<std::pair<Nonlinearity, double>> cases = {
      {Nonlinearity::power(3.0), 1.0}, {Nonlinearity::minkowski(), 0.3}, {Nonlinearity::euclidean(), 1.0}};
  for (const auto& [f, c] : cases) {
    for (double lam : kGridL) {
      const double T = period_particular(f, c, lam).T;
      const IVPSpec spec = IVPSpec::particular_case(f, c, lam);
      const Trajectory tr = integrate_planar(spec, 1.2 * T, T / kOracleStepDivisor);
      worst = std::max(worst, std::fabs(T - detect_period(tr)) / T);
    }
  }
  return {worst <= kTolOracle, "max |T_formula - T_oracle|/T " + sci(worst)};
}

Outcome monotonicity() {
  Outcome out;
  double worst_scaling = 0.0;
  int lambda_nonpositive = 0;
  double max_lambda_sens = -INFINITY;
  int c_sign_wrong = 0;
  double max_c_at_2 = 0.0;
  int total = 0;
  for (double p : kPowerP) {
    const auto f = Nonlinearity::power(p);
    for (double lam : kGridL) {
      const double T1 = period_plaplacian_closed(1.0, lam, p).T;
      for (double c : kGridC) {
        ++total;
        worst_scaling = std::max(worst_scaling, rel(period_particular(f, c, lam).T / T1, std::pow(c, 2.0 - p)));
        const double sl = sensitivity_lambda(f, c, lam);
        max_lambda_sens = std::max(max_lambda_sens, sl);
        if (!(sl > 0.0)) ++lambda_nonpositive;
        const double sc = sensitivity_c(f, c, lam);
        if (p == 2.0) {
          max_c_at_2 = std::max(max_c_at_2, std::fabs(sc));
        } else if ((sc > 0.0) != (2.0 - p > 0.0)) {
          ++c_sign_wrong;
        }
      }
    }
  }
  const bool scaling_ok = worst_scaling <= kTolScaling;
  const bool lambda_ok = lambda_nonpositive == 0;
  const bool c_ok = c_sign_wrong == 0 && max_c_at_2 <= kTolSensitivityZero;
  out.pass = scaling_ok && lambda_ok && c_ok;
  out.detail = "scaling " + sci(worst_scaling) + (scaling_ok ? " ok" : " FAIL") + "; dT/dlambda > 0 at " +
               std::to_string(total - lambda_nonpositive) + "/" + std::to_string(total) +
               " points (max " + sci(max_lambda_sens) + ")" + (lambda_ok ? " ok" : " FAIL") +
               "; dT/dc sign wrong at " + std::to_string(c_sign_wrong) + ", max |dT/dc| at p=2 " +
               sci(max_c_at_2) + (c_ok ? " ok" : " FAIL");
  return out;
}

Outcome sensitivity_fd() {
  const double p = 3.0;
  const auto f = Nonlinearity::power(p);
  const auto T = [&](double c, double lam) { return period_plaplacian_closed(c, lam, p).T; };
  const double fd_l = (T(1.0, 1.0 + kFdStep) - T(1.0, 1.0 - kFdStep)) / (2 * kFdStep);
  const double fd_c = (T(1.0 + kFdStep, 1.0) - T(1.0 - kFdStep, 1.0)) / (2 * kFdStep);
  const double sl = sensitivity_lambda(f, 1.0, 1.0);
  const double sc = sensitivity_c(f, 1.0, 1.0);
  const double el = rel(sl, fd_l);
  const double ec = rel(sc, fd_c);
  return {el <= kTolFd && ec <= kTolFd,
          "dT/dlambda " + sci(sl) + " rel " + sci(el) + "; dT/dc " + sci(sc) + " rel " + sci(ec)};
}

Outcome first_integral() {
  std::vector<IVPSpec> specs;
  {
    IVPSpec s;
    s.c1 = 1.0;
    s.c2 = 1.0;
    specs.push_back(s);
  }
  specs.push_back(IVPSpec::particular_case(Nonlinearity::power(3.0), 1.0, 2.0));
  specs.push_back(IVPSpec::particular_case(Nonlinearity::power(1.5), -0.7, 0.5, 1.0));
  specs.push_back(IVPSpec::particular_case(Nonlinearity::minkowski(), 0.3, 1.0));
  specs.push_back(IVPSpec::particular_case(Nonlinearity::euclidean(), 1.0, 1.0));
  {
    IVPSpec s;
    s.f_part = Nonlinearity::power(3.0);
    s.g_part = Nonlinearity::euclidean();
    s.a = 1.0;
    s.c1 = 0.4;
    s.c2 = -0.3;
    s.lambda = 1.5;
    specs.push_back(s);
  }
  double worst_e = 0.0;
  double worst_p = 0.0;
  for (const auto& spec : specs) {
    const SolutionCurve c = solve_ivp(spec);
    const double T = c.period();
    for (int i = 0; i < 1000; ++i) {
      const double t = spec.a + 3.0 * T * i / 999.0;
      worst_e = std::max(worst_e, std::fabs(c.energy_residual(t)) / (1.0 + c.energy()));
      worst_p = std::max(worst_p, std::fabs(c.x(t + T) - c.x(t)));
    }
  }
  return {worst_e <= kTolEnergy && worst_p <= kTolPeriodicity,
          std::to_string(specs.size()) + " curves; max energy residual/(1+k) " + sci(worst_e) +
              "; max |x(t+T)-x(t)| " + sci(worst_p)};
}

Outcome figures() {
  const SweepTable mk =
      sweep_grid(Nonlinearity::minkowski(), linspace(0.1, 0.5, 8), linspace(0.25, 3.0, 8));
  const SweepTable eu =
      sweep_grid(Nonlinearity::euclidean(), linspace(0.5, 5.0, 8), linspace(0.2, 3.0, 8));
  const bool mk_all = mk.feasible_count() == 64;
  const bool mk_c = check_monotone(mk, SweepAxis::c, Trend::decreasing).ok;
  const bool mk_l = check_monotone(mk, SweepAxis::lambda, Trend::decreasing).ok;
  const bool eu_c = check_monotone(eu, SweepAxis::c, Trend::increasing).ok;
  const bool eu_l = check_monotone(eu, SweepAxis::lambda, Trend::decreasing).ok;
  const double small = period_particular(Nonlinearity::minkowski(), 0.01, 0.01).T;
  const double larger = period_particular(Nonlinearity::minkowski(), 0.1, 0.1).T;
  const bool witness = small > larger;
  std::ostringstream d;
  d << "minkowski feasible " << mk.feasible_count() << "/64, c:dec " << (mk_c ? "ok" : "FAIL") << ", lambda:dec "
    << (mk_l ? "ok" : "FAIL") << "; euclidean c:inc " << (eu_c ? "ok" : "FAIL") << ", lambda:dec "
    << (eu_l ? "ok" : "FAIL") << "; T(0.01,0.01)=" << sci(small) << " > T(0.1,0.1)=" << sci(larger);
  return {mk_all && mk_c && mk_l && eu_c && eu_l && witness, d.str()};
}

Outcome reflection() {
  const auto f = Nonlinearity::power(3.0);
  const ShootingResult r = shoot_bolzano(f, -1.0, 1.0, 2.0, 4.0);
  const double c_ref = closed_form_c_plaplacian(3.0, -1.0, 1.0);
  const double ec = rel(r.c_star, c_ref);
  const double refl = verify_reflection(*r.curve, f, 1000);
  const auto id = Nonlinearity::power(2.0);
  const SolutionCurve lin = solve_reflection_ivp(id, 1.0);
  const double lin_refl = verify_reflection(lin, id, 1000);
  return {ec <= kTolShootC && r.residual_bvp <= kTolBvp && refl <= kTolReflection &&
              lin_refl <= kTolReflectionLinear,
          "c*=" + sci(r.c_star) + " rel vs closed form " + sci(ec) + "; |x(b)-x(a)| " + sci(r.residual_bvp) +
              "; reflection residual " + sci(refl) + "; linear case " + sci(lin_refl)};
}

Outcome generalized_sine() {
  std::mt19937_64 rng(20240601);
  double worst_inv = 0.0;
  for (const auto& [f, g] : {std::pair{Nonlinearity::power(3.0), Nonlinearity::power(3.0)},
                             std::pair{Nonlinearity::power(1.5), Nonlinearity::power(4.0)},
                             std::pair{Nonlinearity::euclidean(), Nonlinearity::power(2.0)}}) {
    const GeneralizedSine s(f, g);
    std::uniform_real_distribution<double> u(s.curve().x_min(), s.curve().x_max());
    for (int i = 0; i < 50; ++i) {
      const double r = u(rng);
      worst_inv = std::max(worst_inv, std::fabs(s.sin(s.arcsin_plus(r)) - r));
    }
  }
  const auto id = Nonlinearity::power(2.0);
  const GeneralizedSine s(id, id);
  double worst_sin = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 4.0 * std::numbers::pi * i / 2000.0;
    worst_sin = std::max(worst_sin, std::fabs(s.sin(t) - std::sin(t)));
  }
  return {worst_inv <= kTolSine && worst_sin <= kTolSine,
          "right-inverse error " + sci(worst_inv) + "; |sin_gf - sin| on [0,4pi] " + sci(worst_sin)};
}

Outcome oracle_order() {
  IVPSpec spec;
  spec.c1 = 1.0;
  spec.c2 = 1.0;
  std::vector<double> errors;
  for (double h : {0.2, 0.1, 0.05}) {
    const Trajectory tr = integrate_planar(spec, 8.0, h);
    errors.push_back(std::fabs(detect_period(tr) - kTwoPi));
  }
  const double r1 = errors[0] / errors[1];
  const double r2 = errors[1] / errors[2];
  return {r1 >= kMinOrderRatio && r2 >= kMinOrderRatio,
          "errors " + sci(errors[0]) + ", " + sci(errors[1]) + ", " + sci(errors[2]) + "; ratios " + sci(r1) +
              ", " + sci(r2)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"p=2 anchor", anchor},
      {"cross-formula consistency", consistency},
      {"formula vs oracle", formula_vs_oracle},
      {"monotonicity", monotonicity},
      {"sensitivity vs finite difference", sensitivity_fd},
      {"first integral", first_integral},
      {"figure reproduction", figures},
      {"reflection", reflection},
      {"generalized sine", generalized_sine},
      {"oracle convergence order", oracle_order},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  return failed;
}
