#pragma once

#include <ostream>
#include <vector>

#include "philap/ivp.hpp"

namespace philap {

/// Planar state: y = g(x').
struct PhaseState {
  double x = 0.0;
  double y = 0.0;
};

/// Fixed-step RK4 solution of x' = g^-1(y), y' = -lambda f(x).
struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  double step = 0.0;
  IVPSpec spec;

  /// Cubic Hermite interpolation between nodes; t must lie within the span.
  PhaseState interpolate(double t) const;
  /// x' at a node state.
  double xprime(const PhaseState& s) const;
  void write_csv(std::ostream& out) const;
};

/// Integrates from a to t_end (either direction) with n = ceil(|t_end - a| / step)
/// equal steps. Leaving the open rectangle dom(f) x cod(g) raises BlowUpError.
Trajectory integrate_planar(const IVPSpec& spec, double t_end, double step);

/// First return time to {x = c1} crossed in the direction of c2. DomainError
/// for c2 = 0; ConvergenceError if the trajectory is too short.
double detect_period(const Trajectory& traj);

/// (x_max - x_min) / 1e4 from the energy level; independent of any period formula.
double default_oracle_step(const IVPSpec& spec);

/// Oracle states at arbitrary times (forward and backward from a), step <= max_step.
std::vector<PhaseState> sample_planar(const IVPSpec& spec, const std::vector<double>& times,
                                      double max_step);

}  // namespace philap
