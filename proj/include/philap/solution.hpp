#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "philap/ivp.hpp"
#include "philap/nonlinearity.hpp"

namespace philap {

struct State {
  double x = 0.0;
  double xprime = 0.0;
};

struct MonotonePiece {
  double t_begin = 0.0;
  double t_end = 0.0;
  bool increasing = true;
};

/// One period of the global solution, extended periodically to all of R.
///
/// The closed orbit lambda F(X) + G(Y) = k in the (X = x - s0, Y = g(x'))
/// plane is cut into eight arcs where lambda F(X) = k/2 or G(Y) = k/2. Each
/// arc is parametrized by whichever coordinate keeps dt/d(param) bounded, so
/// arc durations are regular integrals and every evaluation is a
/// well-conditioned 1-D inversion. Phase 0 is the minimum (x_min, 0); the
/// orbit runs clockwise.
class SolutionCurve {
 public:
  const IVPSpec& spec() const { return problem_.spec; }
  bool degenerate() const { return degenerate_; }
  double energy() const { return problem_.k; }
  /// NaN for the degenerate (constant) curve.
  double period() const { return T_; }
  double x_max() const { return x_max_ + problem_.s0; }
  double x_min() const { return x_min_ + problem_.s0; }
  /// First time >= a where x = x_max.
  double t_max() const { return t0_; }
  /// First time >= a where x = x_min.
  double t_min() const { return t1_; }
  /// b = a + T.
  double period_end() const { return problem_.spec.a + T_; }
  /// Monotone pieces covering [a, b].
  std::vector<MonotonePiece> pieces() const;

  State at(double t) const;
  double x(double t) const { return at(t).x; }
  double xprime(double t) const { return at(t).xprime; }
  /// lambda F(x(t) - s0) + G(g(x'(t))) - k.
  double energy_residual(double t) const;

  /// H+(r): time on the increasing piece through the initial point (or the
  /// next one when starting on a decreasing piece) at which x = r.
  double time_up(double r) const;
  /// H-(r): time on the decreasing piece following it.
  double time_down(double r) const;

  /// Rows `t,x,xprime,energy_residual` at `samples` equally spaced t.
  void write_csv(std::ostream& out, double t_start, double t_end, int samples) const;

 private:
  friend SolutionCurve solve_ivp(const IVPSpec& spec);

  enum class Param { position, slope };
  struct Segment {
    Param param;
    Branch branch;  // Y branch for position arcs, X branch for slope arcs
    double p0;
    double p1;
    double phase0 = 0.0;
    double duration = 0.0;
  };

  explicit SolutionCurve(Problem problem);
  void build();
  double rate(const Segment& s, double p) const;
  double elapsed(const Segment& s, double p) const;
  State state_on(const Segment& s, double p) const;
  double solve_param(const Segment& s, double dt) const;
  double phase_of(std::size_t segment, double p) const;
  double upper_phase(double X) const;
  double lower_phase(double X) const;
  void check_amplitude(double r) const;

  Problem problem_;
  bool degenerate_ = false;
  double T_ = 0.0;
  double T_up_ = 0.0;
  double x_max_ = 0.0;  // normalized coordinates
  double x_min_ = 0.0;
  double xq_left_ = 0.0;
  double xq_right_ = 0.0;
  double yq_up_ = 0.0;
  double yq_down_ = 0.0;
  double phase_start_ = 0.0;
  double t0_ = 0.0;
  double t1_ = 0.0;
  std::array<Segment, 8> segments_{};
};

/// Requires global solvability (InfeasibleError otherwise). x(a) = s0 with
/// x'(a) = 0 gives the constant curve.
SolutionCurve solve_ivp(const IVPSpec& spec);

double eval_x(const SolutionCurve& curve, double t);
double eval_xprime(const SolutionCurve& curve, double t);
double energy_residual(const SolutionCurve& curve, double t);

/// sin_{g,f}: solution of (g o x')' + f(x) = 0, x(0) = 0, x'(0) = 1.
class GeneralizedSine {
 public:
  GeneralizedSine(const Nonlinearity& f_part, const Nonlinearity& g_part);

  double sin(double t) const { return curve_.x(t); }
  double sin_prime(double t) const { return curve_.xprime(t); }
  /// H+(r) for r in [x_min, x_max]; RangeError outside.
  double arcsin_plus(double r) const { return curve_.time_up(r); }
  /// H-(r); lands in [t_max, t_min].
  double arcsin_minus(double r) const { return curve_.time_down(r); }
  const SolutionCurve& curve() const { return curve_; }

 private:
  SolutionCurve curve_;
};

double sin_gf(const Nonlinearity& f_part, const Nonlinearity& g_part, double t);

}  // namespace philap
