#pragma once

#include <string>

#include "philap/ivp.hpp"
#include "philap/nonlinearity.hpp"

namespace philap {

enum class PeriodMethod { general_quadrature, particular_quadrature, odd_homogeneous, plaplacian_closed };

std::string to_string(PeriodMethod method);

struct PeriodResult {
  double T = 0.0;
  double err_estimate = 0.0;
  PeriodMethod method = PeriodMethod::general_quadrature;
};

inline constexpr double kPeriodTol = 1e-10;

/// Integral over [x_min, x_max] of 1/phi+(v) - 1/phi-(v), v = k - lambda F(r),
/// phi+- = g^-1 o G+-^-1. Requires global solvability; degenerate data (k = 0)
/// raises DomainError since no smallest period exists.
PeriodResult period_general(const IVPSpec& spec, double tol = kPeriodTol);

/// Particular case g = f^-1, x(a) = c, x'(a) = f(c).
PeriodResult period_particular(const Nonlinearity& f, double c, double lambda,
                               double tol = kPeriodTol);

/// Single-branch reduction for odd, multiplicative f (power family), c > 0.
PeriodResult period_odd_homogeneous(const Nonlinearity& f, double c, double lambda,
                                    double tol = kPeriodTol);

/// 4 c^(2-p) lambda^(-1/p) (1+lambda)^(2/p-1) Gamma(1/p)^2 / (p Gamma(2/p)).
PeriodResult period_plaplacian_closed(double c, double lambda, double p);

/// Dispatch for the particular problem; general_quadrature goes through
/// IVPSpec::particular_case.
PeriodResult period_by_method(PeriodMethod method, const Nonlinearity& f, double c,
                              double lambda, double tol = kPeriodTol);

}  // namespace philap
