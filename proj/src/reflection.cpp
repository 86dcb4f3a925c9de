#include "philap/reflection.hpp"

#include <charconv>
#include <cmath>
#include <future>
#include <sstream>

#include "philap/errors.hpp"
#include "philap/ivp.hpp"
#include "philap/numerics.hpp"
#include "philap/oracle.hpp"

namespace philap {

namespace {

constexpr double kReflectionTol = 1e-6;

std::string fmt17(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void require_origin_zero(const Nonlinearity& f) {
  if (f.zero_point() != 0.0) {
    throw UnsupportedError("reflection problems need f(0) = 0; " + f.describe() +
                           " vanishes at " + fmt17(f.zero_point()));
  }
}

double period_at(const Nonlinearity& f, double c) {
  return solve_ivp(IVPSpec::particular_case(f, c, 1.0)).period();
}

}  // namespace

double verify_reflection(const SolutionCurve& curve, const Nonlinearity& f, int n_samples,
                         double half_width) {
  if (n_samples < 2) throw DomainError("verify_reflection needs at least 2 samples");
  if (!(half_width > 0.0)) half_width = curve.degenerate() ? 1.0 : curve.period();
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double t = -half_width + 2.0 * half_width * i / static_cast<double>(n_samples - 1);
    const double lhs = curve.xprime(t);
    const double rhs = f.eval_unchecked(curve.x(-t));
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

SolutionCurve solve_reflection_ivp(const Nonlinearity& f, double c) {
  require_origin_zero(f);
  SolutionCurve curve = solve_ivp(IVPSpec::particular_case(f, c, 1.0));
  const double residual = verify_reflection(curve, f, 201);
  if (!(residual <= kReflectionTol)) {
    throw IntegrityError("reflection residual " + fmt17(residual) + " exceeds " +
                         fmt17(kReflectionTol) + " for c=" + fmt17(c));
  }
  return curve;
}

double closed_form_c_plaplacian(double p, double a, double b) {
  if (!(p > 1.0)) throw DomainError("closed-form c requires p > 1");
  if (p == 2.0) {
    throw DomainError("p = 2: the period 2*pi is independent of c, no unique c");
  }
  if (!(b > a)) throw DomainError("closed-form c requires b > a");
  const double g1 = gamma_fn(1.0 / p);
  const double base = (b - a) / std::pow(2.0, 2.0 / p + 1.0) * p * gamma_fn(2.0 / p) / (g1 * g1);
  return std::pow(base, 1.0 / (2.0 - p));
}

ShootingResult shoot_bolzano(const Nonlinearity& f, double a, double b, double c_lo,
                             double c_hi) {
  require_origin_zero(f);
  if (!(b > a)) throw DomainError("shooting requires b > a");
  if (!(c_lo < c_hi)) throw DomainError("shooting bracket requires c_lo < c_hi");
  if (c_lo <= 0.0 && c_hi >= 0.0) {
    throw DomainError("shooting bracket must not contain the equilibrium c = 0");
  }
  for (double c : {c_lo, c_hi}) {
    require_global(normalize(IVPSpec::particular_case(f, c, 1.0)));
  }
  const double target = b - a;
  ShootingResult result;
  result.symmetric_interval = a == -b;
  if (!result.symmetric_interval) {
    result.warnings.push_back(
        "interval is not symmetric about 0; t -> -t does not map [a,b] to itself, "
        "solution found by period matching T = b - a");
  }

  const auto rho = [&](double c) { return target - period_at(f, c); };
  const double r_lo = rho(c_lo);
  const double r_hi = rho(c_hi);
  const double zero_tol = 1e-9 * target;
  result.bracket_history.push_back({c_lo, c_hi});

  if (std::fabs(r_lo) <= zero_tol && std::fabs(r_hi) <= zero_tol) {
    result.degenerate_bracket = true;
    result.c_star = 0.5 * (c_lo + c_hi);
    result.warnings.push_back(
        "residual vanishes at both bracket ends (period independent of c); returning the midpoint");
  } else {
    double lo = c_lo;
    double hi = c_hi;
    double f_lo = r_lo;
    const auto tracked = [&](double c) {
      const double r = rho(c);
      if ((r > 0.0) == (f_lo > 0.0)) {
        lo = c;
        f_lo = r;
      } else {
        hi = c;
      }
      result.bracket_history.push_back({lo, hi});
      return r;
    };
    if ((r_lo > 0.0) == (r_hi > 0.0) && r_lo != 0.0 && r_hi != 0.0) {
      std::ostringstream msg;
      msg << "no sign change of rho(c) = (b-a) - T(c) on [" << fmt17(c_lo) << ", " << fmt17(c_hi)
          << "]: rho(c_lo)=" << fmt17(r_lo) << ", rho(c_hi)=" << fmt17(r_hi);
      throw BracketError(msg.str(), r_lo, r_hi);
    }
    const double scale = std::max(std::fabs(c_lo), std::fabs(c_hi));
    const RootResult root =
        brent_solve(tracked, c_lo, c_hi, {.abs_tol = 1e-14 * scale, .rel_tol = 1e-12, .max_iterations = 200});
    result.c_star = root.root;
    result.iterations = root.iterations;
  }

  SolutionCurve curve = solve_ivp(IVPSpec::particular_case(f, result.c_star, 1.0));
  result.period = curve.period();
  result.residual_period = target - result.period;
  result.residual_bvp = std::fabs(curve.x(b) - curve.x(a));
  // Literal station residual: x_c(b) - c with x_c(a) = c.
  result.residual_station =
      solve_ivp(IVPSpec::particular_case(f, result.c_star, 1.0, a)).x(b) - result.c_star;
  const double half = std::max(std::fabs(a), std::fabs(b));
  result.residual_reflection = verify_reflection(curve, f, 1000, half);

  const IVPSpec spec = IVPSpec::particular_case(f, result.c_star, 1.0);
  const Trajectory traj = integrate_planar(spec, 1.25 * result.period, result.period / 20000.0);
  const double T_oracle = detect_period(traj);
  result.oracle_rel_error = std::fabs(T_oracle - result.period) / result.period;
  if (result.oracle_rel_error > 1e-6) {
    result.warnings.push_back("oracle period disagrees by " + fmt17(result.oracle_rel_error));
  }
  result.curve = std::move(curve);
  return result;
}

std::vector<SignChange> scan_brackets(const Nonlinearity& f, double a, double b, double c_min,
                                      double c_max, int points) {
  if (!(c_min > 0.0 && c_max > c_min)) throw DomainError("scan needs 0 < c_min < c_max");
  if (points < 2) throw DomainError("scan needs at least 2 points");
  require_origin_zero(f);
  const double target = b - a;
  std::vector<std::future<std::optional<double>>> jobs;
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    const double c = c_min * std::pow(c_max / c_min, i / static_cast<double>(points - 1));
    grid.push_back(c);
    jobs.push_back(std::async(std::launch::async, [&f, c, target]() -> std::optional<double> {
      try {
        return target - period_at(f, c);
      } catch (const Error&) {
        return std::nullopt;
      }
    }));
  }
  std::vector<SignChange> out;
  std::optional<double> prev;
  double prev_c = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::optional<double> r = jobs[i].get();
    if (r && prev && ((*r > 0.0) != (*prev > 0.0) || *r == 0.0)) {
      out.push_back({prev_c, grid[i], *prev, *r});
    }
    if (r) {
      prev = r;
      prev_c = grid[i];
    }
  }
  return out;
}

void ShootingResult::write_report(std::ostream& out) const {
  out << "c_star=" << fmt17(c_star) << '\n'
      << "iterations=" << iterations << '\n'
      << "period=" << fmt17(period) << '\n'
      << "residual_period=" << fmt17(residual_period) << '\n'
      << "residual_bvp=" << fmt17(residual_bvp) << '\n'
      << "residual_station=" << fmt17(residual_station) << '\n'
      << "residual_reflection=" << fmt17(residual_reflection) << '\n'
      << "oracle_rel_error=" << fmt17(oracle_rel_error) << '\n'
      << "symmetric_interval=" << (symmetric_interval ? "true" : "false") << '\n'
      << "degenerate_bracket=" << (degenerate_bracket ? "true" : "false") << '\n';
  if (!bracket_history.empty()) {
    out << "bracket_final=" << fmt17(bracket_history.back().c_lo) << ' '
        << fmt17(bracket_history.back().c_hi) << '\n';
  }
  for (const auto& w : warnings) out << "warning=" << w << '\n';
}

}  // namespace philap
