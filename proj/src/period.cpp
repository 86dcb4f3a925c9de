#include "philap/period.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "philap/errors.hpp"
#include "philap/numerics.hpp"

namespace philap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Velocity = std::function<double(double v)>;

// Both halves of the orbit integral, split at the equilibrium 0. The energy
// gap v = lambda (F(x_end) - F(r)) is formed from the distance to the
// turning point so it keeps full precision where the integrand blows up.
PeriodResult orbit_integral(const Potential& F, double lambda, double x_min, double x_max,
                            const Velocity& up, const Velocity& down, double tol,
                            PeriodMethod method) {
  const auto integrand = [&](double v) {
    if (!(v > 0.0)) return kNaN;
    return 1.0 / up(v) - 1.0 / down(v);
  };
  const GapIntegrand right = [&](double, double, double gap_hi) {
    return integrand(-lambda * F.increment(x_max, -gap_hi));
  };
  const GapIntegrand left = [&](double, double gap_lo, double) {
    return integrand(-lambda * F.increment(x_min, gap_lo));
  };
  const QuadResult r = integrate_singular(right, 0.0, x_max, tol);
  const QuadResult l = integrate_singular(left, x_min, 0.0, tol);
  return {r.value + l.value, r.err_estimate + l.err_estimate, method};
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << " must be positive, got " << v;
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string to_string(PeriodMethod method) {
  switch (method) {
    case PeriodMethod::general_quadrature:
      return "general_quadrature";
    case PeriodMethod::particular_quadrature:
      return "particular_quadrature";
    case PeriodMethod::odd_homogeneous:
      return "odd_homogeneous";
    case PeriodMethod::plaplacian_closed:
      return "plaplacian_closed";
  }
  return "unknown";
}

PeriodResult period_general(const IVPSpec& spec, double tol) {
  const Problem pr = normalize(spec);
  require_global(pr);
  if (pr.degenerate()) {
    throw DomainError("degenerate data (x = s0, x' = 0): the solution is constant, no period");
  }
  const double level = pr.k / pr.lambda;
  const double x_max = pr.F.branch_inverse(Branch::plus, level);
  const double x_min = pr.F.branch_inverse(Branch::minus, level);
  const Velocity up = [&](double v) {
    return pr.g_inv.eval_unchecked(pr.G.branch_inverse_unchecked(Branch::plus, v));
  };
  const Velocity down = [&](double v) {
    return pr.g_inv.eval_unchecked(pr.G.branch_inverse_unchecked(Branch::minus, v));
  };
  return orbit_integral(pr.F, pr.lambda, x_min, x_max, up, down, tol,
                        PeriodMethod::general_quadrature);
}

PeriodResult period_particular(const Nonlinearity& f, double c, double lambda, double tol) {
  const Problem pr = normalize(IVPSpec::particular_case(f, c, lambda));
  require_global(pr);
  if (pr.degenerate()) {
    throw DomainError("degenerate data c = s0: the solution is constant, no period");
  }
  const double level = (1.0 + 1.0 / lambda) * pr.F.eval_unchecked(pr.x0);
  const double x_max = pr.F.branch_inverse(Branch::plus, level);
  const double x_min = pr.F.branch_inverse(Branch::minus, level);
  const Velocity up = [&](double v) {
    return pr.f.eval_unchecked(pr.F.branch_inverse_unchecked(Branch::plus, v));
  };
  const Velocity down = [&](double v) {
    return pr.f.eval_unchecked(pr.F.branch_inverse_unchecked(Branch::minus, v));
  };
  return orbit_integral(pr.F, lambda, x_min, x_max, up, down, tol,
                        PeriodMethod::particular_quadrature);
}

PeriodResult period_odd_homogeneous(const Nonlinearity& f, double c, double lambda,
                                    double tol) {
  if (f.family() != Family::power) {
    throw UnsupportedError("odd/homogeneous reduction needs a multiplicative odd f "
                           "(power family), got " + f.describe());
  }
  require_positive(c, "c");
  require_positive(lambda, "lambda");
  const Potential F(f);
  const double R = F.branch_inverse(Branch::plus, (1.0 + 1.0 / lambda) * F.eval_unchecked(1.0));
  const GapIntegrand integrand = [&](double, double, double gap_hi) {
    const double v = -lambda * F.increment(R, -gap_hi);
    if (!(v > 0.0)) return kNaN;
    return 1.0 / f.eval_unchecked(F.branch_inverse_unchecked(Branch::plus, v));
  };
  const QuadResult q = integrate_singular(integrand, 0.0, R, tol);
  const double scale = 4.0 * c * f.eval_unchecked(1.0) / f.eval_unchecked(c);
  return {scale * q.value, scale * q.err_estimate, PeriodMethod::odd_homogeneous};
}

PeriodResult period_plaplacian_closed(double c, double lambda, double p) {
  require_positive(c, "c");
  require_positive(lambda, "lambda");
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("p-Laplacian closed form requires p > 1");
  }
  const double beta = gamma_fn(1.0 / p) * gamma_fn(1.0 / p) / (p * gamma_fn(2.0 / p));
  const double T = 4.0 * std::pow(c, 2.0 - p) * std::pow(lambda, -1.0 / p) *
                   std::pow(1.0 + lambda, 2.0 / p - 1.0) * beta;
  return {T, 0.0, PeriodMethod::plaplacian_closed};
}

PeriodResult period_by_method(PeriodMethod method, const Nonlinearity& f, double c,
                              double lambda, double tol) {
  switch (method) {
    case PeriodMethod::general_quadrature:
      return period_general(IVPSpec::particular_case(f, c, lambda), tol);
    case PeriodMethod::particular_quadrature:
      return period_particular(f, c, lambda, tol);
    case PeriodMethod::odd_homogeneous:
      return period_odd_homogeneous(f, c, lambda, tol);
    case PeriodMethod::plaplacian_closed:
      if (f.family() != Family::power) {
        throw UnsupportedError("closed form applies to the power family only, got " +
                               f.describe());
      }
      return period_plaplacian_closed(c, lambda, f.exponent());
  }
  throw UnsupportedError("unknown period method");
}

}  // namespace philap
