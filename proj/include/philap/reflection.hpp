#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "philap/nonlinearity.hpp"
#include "philap/solution.hpp"

namespace philap {

/// Curve of (f^-1 o x')' + f(x) = 0, x(0) = c, x'(0) = f(c), which solves
/// x'(t) = f(x(-t)), x(0) = c. The reflection residual is checked on
/// symmetric samples; above 1e-6 raises IntegrityError.
SolutionCurve solve_reflection_ivp(const Nonlinearity& f, double c);

/// max |x'(t) - f(x(-t))| over n samples evenly spread on [-half_width, half_width].
/// half_width <= 0 selects one period (1 for a constant curve).
double verify_reflection(const SolutionCurve& curve, const Nonlinearity& f, int n_samples,
                         double half_width = 0.0);

struct BracketStep {
  double c_lo = 0.0;
  double c_hi = 0.0;
};

struct ShootingResult {
  double c_star = 0.0;
  std::vector<BracketStep> bracket_history;
  int iterations = 0;
  /// (b - a) - T(c*).
  double residual_period = 0.0;
  /// |x(b) - x(a)| on the curve anchored at 0.
  double residual_bvp = 0.0;
  /// x_{c*}(b) - c* with the initial station moved to a.
  double residual_station = 0.0;
  double residual_reflection = 0.0;
  double period = 0.0;
  /// |T_oracle - T| / T, oracle step T/20000.
  double oracle_rel_error = 0.0;
  bool symmetric_interval = true;
  bool degenerate_bracket = false;
  std::vector<std::string> warnings;
  std::optional<SolutionCurve> curve;

  /// Flat `key=value` lines.
  void write_report(std::ostream& out) const;
};

/// Finds c with T(c) = b - a: residual rho(c) = (b - a) - T(c), T from
/// solve_ivp, Brent to 1e-12 relative in c. BracketError without a sign
/// change; InfeasibleError if an endpoint violates 2F(c) < min F(tau).
ShootingResult shoot_bolzano(const Nonlinearity& f, double a, double b, double c_lo, double c_hi);

/// c = ((b - a) / 2^(2/p+1) * p Gamma(2/p) / Gamma(1/p)^2)^(1/(2-p)); p = 2 is degenerate.
double closed_form_c_plaplacian(double p, double a, double b);

struct SignChange {
  double c_lo = 0.0;
  double c_hi = 0.0;
  double rho_lo = 0.0;
  double rho_hi = 0.0;
};

/// rho on a geometric grid in [c_min, c_max] (0 < c_min < c_max); infeasible
/// points are skipped. Points are evaluated concurrently.
std::vector<SignChange> scan_brackets(const Nonlinearity& f, double a, double b, double c_min,
                                      double c_max, int points);

}  // namespace philap
