#include "philap/sensitivity.hpp"

#include <cmath>
#include <limits>

#include "philap/errors.hpp"
#include "philap/ivp.hpp"
#include "philap/numerics.hpp"

namespace philap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// f'(x)/f(x); NaN where f' is unbounded (only at x = 0, an endpoint node).
double log_slope(const Nonlinearity& f, double x) {
  const Slope d = f.impl().slope(x);
  if (d.unbounded) return kNaN;
  return d.value / f.eval_unchecked(x);
}

struct Reduced {
  Nonlinearity f;
  double c;
};

// Shift-normalizes f and checks feasibility of the particular problem.
Reduced prepare(const Nonlinearity& f, double c, double lambda) {
  require_global(normalize(IVPSpec::particular_case(f, c, lambda)));
  const double c0 = c - f.zero_point();
  if (c0 == 0.0) throw DomainError("degenerate data c = s0: T is undefined");
  return {f.normalized(), c0};
}

double integrate_unit(const SensitivityIntegrand& in,
                      double (SensitivityIntegrand::*member)(double, double) const, double tol,
                      double abs_tol) {
  const GapIntegrand g = [&](double s, double, double one_minus_s) {
    return (in.*member)(s, one_minus_s);
  };
  return integrate_singular(g, 0.0, 1.0, tol, kQuadMaxLevel, abs_tol).value;
}

}  // namespace

SensitivityIntegrand::SensitivityIntegrand(Nonlinearity f, double lambda, double c)
    : f_(std::move(f)), F_(f_), lambda_(lambda), c_(c) {
  if (f_.zero_point() != 0.0) {
    throw DomainError("sensitivity integrand expects f(0) = 0; normalize the shift first");
  }
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (c == 0.0) throw DomainError("c must be nonzero");
  Fc_ = F_.eval_unchecked(c);
  fc_ = f_.eval_unchecked(c);
}

SensitivityTerms SensitivityIntegrand::terms(double s, double one_minus_s, bool partials) const {
  SensitivityTerms t;
  const double lam = lambda_;
  const double cs = s < 0.5 ? c_ * s : c_ - c_ * one_minus_s;
  const double Fcs = F_.eval_unchecked(cs);
  const double fcs = f_.eval_unchecked(cs);
  // F(c) - F(cs) and f(c) - s f(cs), from the distance to s = 1.
  const double dF = -F_.increment(c_, -c_ * one_minus_s);
  const double u = (1.0 + 1.0 / lam) * Fcs;
  const double w = (1.0 + lam) * dF;
  const double b_plus = F_.branch_inverse_unchecked(Branch::plus, u);
  const double b_minus = F_.branch_inverse_unchecked(Branch::minus, u);
  const double g_plus = F_.branch_inverse_unchecked(Branch::plus, w);
  const double g_minus = F_.branch_inverse_unchecked(Branch::minus, w);

  t.alpha = (1.0 + 1.0 / lam) * c_ * fcs;
  t.beta_plus = f_.eval_unchecked(b_plus);
  t.beta_minus = f_.eval_unchecked(b_minus);
  t.gamma_plus = f_.eval_unchecked(g_plus);
  t.gamma_minus = f_.eval_unchecked(g_minus);
  if (!partials) return t;

  const double rb_plus = log_slope(f_, b_plus);
  const double rb_minus = log_slope(f_, b_minus);
  const double rg_plus = log_slope(f_, g_plus);
  const double rg_minus = log_slope(f_, g_minus);
  const Slope fprime_cs = f_.impl().slope(cs);
  const double df = -f_.increment(c_, -c_ * one_minus_s) + one_minus_s * fcs;

  t.dalpha_dlambda = -c_ * fcs / (lam * lam);
  t.dbeta_plus_dlambda = -Fcs / (lam * lam) * rb_plus;
  t.dbeta_minus_dlambda = -Fcs / (lam * lam) * rb_minus;
  t.dgamma_plus_dlambda = dF * rg_plus;
  t.dgamma_minus_dlambda = dF * rg_minus;

  t.dalpha_dc = fprime_cs.unbounded
                    ? kNaN
                    : (1.0 + 1.0 / lam) * (fcs + cs * fprime_cs.value);
  t.dbeta_plus_dc = (1.0 + 1.0 / lam) * s * fcs * rb_plus;
  t.dbeta_minus_dc = (1.0 + 1.0 / lam) * s * fcs * rb_minus;
  t.dgamma_plus_dc = (1.0 + lam) * df * rg_plus;
  t.dgamma_minus_dc = (1.0 + lam) * df * rg_minus;
  return t;
}

SensitivityTerms SensitivityIntegrand::at(double s, double one_minus_s) const {
  return terms(s, one_minus_s, f_.has_derivative());
}

double SensitivityIntegrand::period(double s, double one_minus_s) const {
  const SensitivityTerms t = terms(s, one_minus_s, false);
  return t.alpha * (1.0 / t.beta_plus - 1.0 / t.beta_minus) *
         (1.0 / t.gamma_plus - 1.0 / t.gamma_minus);
}

namespace {

double six_term(const SensitivityTerms& t, double da, double db_plus, double db_minus,
                double dg_plus, double dg_minus) {
  const double B = 1.0 / t.beta_plus - 1.0 / t.beta_minus;
  const double G = 1.0 / t.gamma_plus - 1.0 / t.gamma_minus;
  const double dB = db_minus / (t.beta_minus * t.beta_minus) - db_plus / (t.beta_plus * t.beta_plus);
  const double dG =
      dg_minus / (t.gamma_minus * t.gamma_minus) - dg_plus / (t.gamma_plus * t.gamma_plus);
  return da * B * G + t.alpha * dB * G + t.alpha * B * dG;
}

double odd_form(const SensitivityTerms& t, double da, double db_plus, double dg_plus) {
  return 4.0 / (t.beta_plus * t.gamma_plus) *
         (da - t.alpha * (db_plus / t.beta_plus + dg_plus / t.gamma_plus));
}

}  // namespace

double SensitivityIntegrand::dlambda_general(double s, double one_minus_s) const {
  const SensitivityTerms t = terms(s, one_minus_s, true);
  return six_term(t, t.dalpha_dlambda, t.dbeta_plus_dlambda, t.dbeta_minus_dlambda,
                  t.dgamma_plus_dlambda, t.dgamma_minus_dlambda);
}

double SensitivityIntegrand::dc_general(double s, double one_minus_s) const {
  const SensitivityTerms t = terms(s, one_minus_s, true);
  return six_term(t, t.dalpha_dc, t.dbeta_plus_dc, t.dbeta_minus_dc, t.dgamma_plus_dc,
                  t.dgamma_minus_dc);
}

double SensitivityIntegrand::dlambda_odd(double s, double one_minus_s) const {
  const SensitivityTerms t = terms(s, one_minus_s, true);
  return odd_form(t, t.dalpha_dlambda, t.dbeta_plus_dlambda, t.dgamma_plus_dlambda);
}

double SensitivityIntegrand::dc_odd(double s, double one_minus_s) const {
  const SensitivityTerms t = terms(s, one_minus_s, true);
  return odd_form(t, t.dalpha_dc, t.dbeta_plus_dc, t.dgamma_plus_dc);
}

double sensitivity_lambda(const Nonlinearity& f, double c, double lambda, double tol) {
  if (!f.has_derivative()) {
    throw UnsupportedError("dT/dlambda needs f'; " + f.describe() + " has none");
  }
  const Reduced r = prepare(f, c, lambda);
  const double abs_tol = 1e-5 * tol;
  if (r.f.is_odd()) {
    const SensitivityIntegrand in(r.f, lambda, std::fabs(r.c));
    return integrate_unit(in, &SensitivityIntegrand::dlambda_odd, tol, abs_tol);
  }
  if (r.c < 0.0) {
    throw DomainError("c < s0 is only supported for odd f");
  }
  const SensitivityIntegrand in(r.f, lambda, r.c);
  return integrate_unit(in, &SensitivityIntegrand::dlambda_general, tol, abs_tol);
}

double sensitivity_c(const Nonlinearity& f, double c, double lambda, double tol) {
  if (!f.has_derivative()) {
    throw UnsupportedError("dT/dc needs f'; " + f.describe() + " has none");
  }
  const Reduced r = prepare(f, c, lambda);
  const double abs_tol = 1e-5 * tol;
  if (r.f.is_odd()) {
    const SensitivityIntegrand in(r.f, lambda, std::fabs(r.c));
    const double v = integrate_unit(in, &SensitivityIntegrand::dc_odd, tol, abs_tol);
    return r.c < 0.0 ? -v : v;
  }
  if (r.c < 0.0) {
    throw DomainError("c < s0 is only supported for odd f");
  }
  const SensitivityIntegrand in(r.f, lambda, r.c);
  return integrate_unit(in, &SensitivityIntegrand::dc_general, tol, abs_tol);
}

double period_from_integrand(const Nonlinearity& f, double c, double lambda, double tol) {
  const Reduced r = prepare(f, c, lambda);
  const SensitivityIntegrand in(r.f, lambda, r.c);
  return integrate_unit(in, &SensitivityIntegrand::period, tol, 0.0);
}

}  // namespace philap
