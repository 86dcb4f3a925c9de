#pragma once

#include <string>

#include "philap/nonlinearity.hpp"

namespace philap {

/// (g o x')' + lambda f(x) = 0,  x(a) = c1,  x'(a) = c2.
struct IVPSpec {
  Nonlinearity f_part = Nonlinearity::power(2.0);
  Nonlinearity g_part = Nonlinearity::power(2.0);
  double a = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double lambda = 1.0;
  /// Set by particular(); only changes how infeasibility is reported.
  bool particular = false;

  /// (f^-1 o x')' + lambda f(x) = 0, x(a) = c, x'(a) = f(c).
  ///
  /// With a zero s0 != 0, f is first shifted so that g = f~^-1 vanishes at 0
  /// and x'(a) = f~(c - s0).
  static IVPSpec particular_case(const Nonlinearity& f, double c, double lambda, double a = 0.0);
};

struct Solvability {
  double k = 0.0;
  /// min{G(sigma3), G(sigma4)}.
  double local_bound = 0.0;
  /// lambda * min{F(tau1), F(tau2)}.
  double global_bound = 0.0;
  bool local = false;
  bool global = false;
};

/// Shift-normalized problem data shared by the period, solution and oracle code.
///
/// f has its zero at the origin; positions are stored relative to s0.
struct Problem {
  IVPSpec spec;
  Nonlinearity f;
  Nonlinearity g;
  Nonlinearity g_inv;
  Potential F;
  Potential G;
  double s0 = 0.0;
  double x0 = 0.0;  // c1 - s0
  double y0 = 0.0;  // g(c2)
  double lambda = 1.0;
  double k = 0.0;

  bool degenerate() const { return x0 == 0.0 && y0 == 0.0; }
};

/// Validates ranges (c1, c2 in their domains, lambda > 0, g(0) = 0) and
/// shifts f. Throws DomainError on bad input.
Problem normalize(const IVPSpec& spec);

Solvability classify(const IVPSpec& spec);
Solvability classify(const Problem& problem);

/// Throws InfeasibleError naming the violated inequality.
void require_global(const Problem& problem);

}  // namespace philap
