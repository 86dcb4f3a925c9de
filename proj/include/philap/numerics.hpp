#pragma once

#include <functional>
#include <span>

namespace philap {

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int levels_used = 0;
};

/// Integrand that also receives the distances from x to both endpoints.
///
/// Near an endpoint the distance is exact to full relative precision even
/// when x itself has rounded onto the endpoint, so integrands of the form
/// (hi - x)^(-theta) can be evaluated without cancellation.
using GapIntegrand = std::function<double(double x, double gap_lo, double gap_hi)>;
using PlainIntegrand = std::function<double(double x)>;

inline constexpr int kQuadMaxLevel = 12;

/// Tanh-sinh (double-exponential) quadrature on [lo, hi].
///
/// Handles algebraic endpoint singularities with exponent > -1. Non-finite
/// integrand values at nodes closer than 1e-15 (relative) to an endpoint are
/// dropped; anywhere else they raise ConvergenceError. Level n uses step
/// 2^-n in the tanh-sinh variable. Throws ConvergenceError if the level-to-
/// level change has not fallen below rel_tol by kQuadMaxLevel. A positive
/// abs_tol also accepts changes below it (integrals that cancel to ~0).
QuadResult integrate_singular(const GapIntegrand& f, double lo, double hi,
                              double rel_tol, int max_level = kQuadMaxLevel,
                              double abs_tol = 0.0);
QuadResult integrate_singular(const PlainIntegrand& f, double lo, double hi,
                              double rel_tol, int max_level = kQuadMaxLevel,
                              double abs_tol = 0.0);

struct RootOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_iterations = 200;
};

struct RootResult {
  double root = 0.0;
  int iterations = 0;
};

/// Brent's method on a bracket with fun(lo) * fun(hi) <= 0.
///
/// Stops once the bracket is narrower than 2 * (abs_tol + rel_tol * |x|) or
/// an exact zero is hit. Throws BracketError without a sign change and
/// ConvergenceError when max_iterations is exhausted.
RootResult brent_solve(const std::function<double(double)>& fun, double lo,
                       double hi, const RootOptions& options = {});

/// Convenience form: bracket width tol, default iteration cap.
double brent_root(const std::function<double(double)>& fun, double lo,
                  double hi, double tol);

/// Lanczos approximation (g = 7, 9 coefficients) for x > 0.
double gamma_fn(double x);

/// Pairwise summation; error grows like log(n) instead of n.
double pairwise_sum(std::span<const double> values);

}  // namespace philap
