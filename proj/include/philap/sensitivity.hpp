#pragma once

#include "philap/nonlinearity.hpp"
#include "philap/period.hpp"

namespace philap {

/// alpha, beta+-, gamma+- and their partials at one s in [0, 1].
///
///   alpha    = (1 + 1/lambda) c f(cs)
///   beta+-   = f(F+-^-1((1 + 1/lambda) F(cs)))
///   gamma+-  = f(F+-^-1((1 + lambda)(F(c) - F(cs))))
///
/// Sign table for c > 0: alpha, beta+, gamma+ >= 0; beta-, gamma- <= 0;
/// dalpha/dlambda <= 0, dbeta+/dlambda <= 0, dbeta-/dlambda >= 0,
/// dgamma+/dlambda >= 0, dgamma-/dlambda <= 0.
struct SensitivityTerms {
  double alpha = 0.0;
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;

  double dalpha_dlambda = 0.0;
  double dbeta_plus_dlambda = 0.0;
  double dbeta_minus_dlambda = 0.0;
  double dgamma_plus_dlambda = 0.0;
  double dgamma_minus_dlambda = 0.0;

  double dalpha_dc = 0.0;
  double dbeta_plus_dc = 0.0;
  double dbeta_minus_dc = 0.0;
  double dgamma_plus_dc = 0.0;
  double dgamma_minus_dc = 0.0;
};

/// Integrands of T, dT/dlambda and dT/dc over s in [0, 1] for the particular
/// problem. Partials need f'; without it only period() is available.
class SensitivityIntegrand {
 public:
  SensitivityIntegrand(Nonlinearity f, double lambda, double c);

  /// one_minus_s is passed separately so F(c) - F(cs) keeps full precision at s -> 1.
  SensitivityTerms at(double s, double one_minus_s) const;
  SensitivityTerms at(double s) const { return at(s, 1.0 - s); }

  /// alpha (1/beta+ - 1/beta-)(1/gamma+ - 1/gamma-).
  double period(double s, double one_minus_s) const;
  /// Six-term derivative integrands (any f).
  double dlambda_general(double s, double one_minus_s) const;
  double dc_general(double s, double one_minus_s) const;
  /// 4/(beta+ gamma+) [d alpha - alpha (d beta+/beta+ + d gamma+/gamma+)] (odd f).
  double dlambda_odd(double s, double one_minus_s) const;
  double dc_odd(double s, double one_minus_s) const;

  const Nonlinearity& f() const { return f_; }
  double lambda() const { return lambda_; }
  double c() const { return c_; }

 private:
  SensitivityTerms terms(double s, double one_minus_s, bool partials) const;

  Nonlinearity f_;
  Potential F_;
  double lambda_;
  double c_;
  double Fc_;
  double fc_;
};

inline constexpr double kSensitivityTol = 1e-8;

/// dT/dlambda for the particular problem. Odd f uses the reduced integrand
/// (and |c|); otherwise the general one with c > 0.
double sensitivity_lambda(const Nonlinearity& f, double c, double lambda,
                          double tol = kSensitivityTol);
/// dT/dc; for odd f and c < 0 the value at |c| with its sign flipped.
double sensitivity_c(const Nonlinearity& f, double c, double lambda,
                     double tol = kSensitivityTol);

/// T through the s-parametrized integral; a cross-check on the change of variables.
double period_from_integrand(const Nonlinearity& f, double c, double lambda,
                             double tol = kPeriodTol);

}  // namespace philap
