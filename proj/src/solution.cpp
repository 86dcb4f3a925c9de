#include "philap/solution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "philap/errors.hpp"
#include "philap/numerics.hpp"

namespace philap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kArcTol = 1e-14;

std::string fmt17(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// x mod T in [0, T).
double wrap(double x, double T) {
  double r = x - std::floor(x / T) * T;
  if (r >= T || r < 0.0) r = 0.0;
  return r;
}

}  // namespace

SolutionCurve::SolutionCurve(Problem problem) : problem_(std::move(problem)) {}

double SolutionCurve::rate(const Segment& s, double p) const {
  const Problem& P = problem_;
  if (s.param == Param::position) {
    const double v = std::max(0.0, P.k - P.lambda * P.F.eval_unchecked(p));
    return 1.0 / P.g_inv.eval_unchecked(P.G.branch_inverse_unchecked(s.branch, v));
  }
  const double level = std::max(0.0, (P.k - P.G.eval_unchecked(p)) / P.lambda);
  return -1.0 / (P.lambda * P.f.eval_unchecked(P.F.branch_inverse_unchecked(s.branch, level)));
}

double SolutionCurve::elapsed(const Segment& s, double p) const {
  if (p == s.p0) return 0.0;
  const double lo = std::min(s.p0, p);
  const double hi = std::max(s.p0, p);
  const PlainIntegrand integrand = [&](double q) { return rate(s, q); };
  const double v = integrate_singular(integrand, lo, hi, kArcTol).value;
  return p > s.p0 ? v : -v;
}

State SolutionCurve::state_on(const Segment& s, double p) const {
  const Problem& P = problem_;
  double X;
  double Y;
  if (s.param == Param::position) {
    X = p;
    Y = P.G.branch_inverse_unchecked(s.branch,
                                     std::max(0.0, P.k - P.lambda * P.F.eval_unchecked(p)));
  } else {
    Y = p;
    X = P.F.branch_inverse_unchecked(
        s.branch, std::max(0.0, (P.k - P.G.eval_unchecked(p)) / P.lambda));
  }
  return {X + P.s0, P.g_inv.eval_unchecked(Y)};
}

double SolutionCurve::solve_param(const Segment& s, double dt) const {
  if (dt <= 0.0) return s.p0;
  if (dt >= s.duration) return s.p1;
  const double lo = std::min(s.p0, s.p1);
  const double hi = std::max(s.p0, s.p1);
  const double scale = std::max(std::fabs(s.p0), std::fabs(s.p1));
  const auto residual = [&](double p) {
    const double e = elapsed(s, p) - dt;
    return s.p1 > s.p0 ? e : -e;
  };
  return brent_solve(residual, lo, hi, {.abs_tol = 1e-16 * scale, .rel_tol = 1e-15, .max_iterations = 200})
      .root;
}

double SolutionCurve::phase_of(std::size_t segment, double p) const {
  const Segment& s = segments_[segment];
  const double lo = std::min(s.p0, s.p1);
  const double hi = std::max(s.p0, s.p1);
  return s.phase0 + elapsed(s, std::clamp(p, lo, hi));
}

void SolutionCurve::build() {
  const Problem& P = problem_;
  const double a = P.spec.a;
  if (P.degenerate()) {
    degenerate_ = true;
    T_ = kNaN;
    t0_ = t1_ = a;
    return;
  }
  require_global(P);
  const double k = P.k;
  const double lam = P.lambda;
  x_max_ = P.F.branch_inverse(Branch::plus, k / lam);
  x_min_ = P.F.branch_inverse(Branch::minus, k / lam);
  xq_right_ = P.F.branch_inverse(Branch::plus, 0.5 * k / lam);
  xq_left_ = P.F.branch_inverse(Branch::minus, 0.5 * k / lam);
  yq_up_ = P.G.branch_inverse(Branch::plus, 0.5 * k);
  yq_down_ = P.G.branch_inverse(Branch::minus, 0.5 * k);

  using enum Param;
  segments_ = {{
      {slope, Branch::minus, 0.0, yq_up_},
      {position, Branch::plus, xq_left_, 0.0},
      {position, Branch::plus, 0.0, xq_right_},
      {slope, Branch::plus, yq_up_, 0.0},
      {slope, Branch::plus, 0.0, yq_down_},
      {position, Branch::minus, xq_right_, 0.0},
      {position, Branch::minus, 0.0, xq_left_},
      {slope, Branch::minus, yq_down_, 0.0},
  }};
  double phase = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    Segment& s = segments_[i];
    s.phase0 = phase;
    s.duration = elapsed(s, s.p1);
    phase += s.duration;
    if (i == 3) T_up_ = phase;
  }
  T_ = phase;

  const double X0 = P.x0;
  const double Y0 = P.y0;
  const bool outer = lam * P.F.eval_unchecked(X0) >= 0.5 * k;
  if (Y0 > 0.0) {
    if (X0 < 0.0) {
      phase_start_ = outer ? phase_of(0, Y0) : phase_of(1, X0);
    } else {
      phase_start_ = outer ? phase_of(3, Y0) : phase_of(2, X0);
    }
  } else if (Y0 < 0.0) {
    if (X0 > 0.0) {
      phase_start_ = outer ? phase_of(4, Y0) : phase_of(5, X0);
    } else {
      phase_start_ = outer ? phase_of(7, Y0) : phase_of(6, X0);
    }
  } else {
    phase_start_ = X0 > 0.0 ? T_up_ : 0.0;
  }
  t0_ = a + wrap(T_up_ - phase_start_, T_);
  t1_ = a + wrap(-phase_start_, T_);
}

State SolutionCurve::at(double t) const {
  const IVPSpec& spec = problem_.spec;
  if (degenerate_) return {spec.c1, spec.c2};
  const double offset = wrap(t - spec.a, T_);
  if (offset == 0.0) return {spec.c1, spec.c2};
  double phase = phase_start_ + offset;
  if (phase >= T_) phase -= T_;
  std::size_t i = segments_.size() - 1;
  while (i > 0 && segments_[i].phase0 > phase) --i;
  const Segment& s = segments_[i];
  return state_on(s, solve_param(s, phase - s.phase0));
}

double SolutionCurve::energy_residual(double t) const {
  const Problem& P = problem_;
  const State s = at(t);
  const double Y = P.g.eval_unchecked(s.xprime);
  return P.lambda * P.F.eval_unchecked(s.x - P.s0) + P.G.eval_unchecked(Y) - P.k;
}

double SolutionCurve::upper_phase(double X) const {
  const Problem& P = problem_;
  const auto slope_param = [&] {
    return P.G.branch_inverse_unchecked(Branch::plus,
                                        std::max(0.0, P.k - P.lambda * P.F.eval_unchecked(X)));
  };
  if (X <= xq_left_) return phase_of(0, slope_param());
  if (X <= 0.0) return phase_of(1, X);
  if (X < xq_right_) return phase_of(2, X);
  return phase_of(3, slope_param());
}

double SolutionCurve::lower_phase(double X) const {
  const Problem& P = problem_;
  const auto slope_param = [&] {
    return P.G.branch_inverse_unchecked(Branch::minus,
                                        std::max(0.0, P.k - P.lambda * P.F.eval_unchecked(X)));
  };
  if (X >= xq_right_) return phase_of(4, slope_param());
  if (X > 0.0) return phase_of(5, X);
  if (X > xq_left_) return phase_of(6, X);
  return phase_of(7, slope_param());
}

void SolutionCurve::check_amplitude(double r) const {
  const double lo = x_min();
  const double hi = x_max();
  const double slack = 1e-14 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
  if (!(r >= lo - slack && r <= hi + slack)) {
    throw RangeError("r=" + fmt17(r) + " outside the amplitude range [" + fmt17(lo) + ", " +
                     fmt17(hi) + "]");
  }
}

double SolutionCurve::time_up(double r) const {
  const double a = problem_.spec.a;
  if (degenerate_) {
    if (r != problem_.spec.c1) throw RangeError("constant curve only attains x = c1");
    return a;
  }
  check_amplitude(r);
  const double X = std::clamp(r - problem_.s0, x_min_, x_max_);
  const double U = upper_phase(X);
  if (phase_start_ <= T_up_) return a + U - phase_start_;
  return a + T_ - phase_start_ + U;
}

double SolutionCurve::time_down(double r) const {
  const double a = problem_.spec.a;
  if (degenerate_) {
    if (r != problem_.spec.c1) throw RangeError("constant curve only attains x = c1");
    return a;
  }
  check_amplitude(r);
  const double X = std::clamp(r - problem_.s0, x_min_, x_max_);
  return a + lower_phase(X) - phase_start_;
}

std::vector<MonotonePiece> SolutionCurve::pieces() const {
  const double a = problem_.spec.a;
  if (degenerate_) return {};
  const double b = a + T_;
  std::vector<double> cuts{a, t0_, t1_, b};
  std::sort(cuts.begin(), cuts.end());
  std::vector<MonotonePiece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    const double mid = wrap(phase_start_ + 0.5 * (cuts[i] + cuts[i + 1]) - a, T_);
    out.push_back({cuts[i], cuts[i + 1], mid < T_up_});
  }
  return out;
}

void SolutionCurve::write_csv(std::ostream& out, double t_start, double t_end, int samples) const {
  out << "t,x,xprime,energy_residual\n";
  if (samples <= 0) return;
  for (int i = 0; i < samples; ++i) {
    const double t =
        samples == 1 ? t_start : t_start + (t_end - t_start) * i / static_cast<double>(samples - 1);
    const State s = at(t);
    out << fmt17(t) << ',' << fmt17(s.x) << ',' << fmt17(s.xprime) << ','
        << fmt17(energy_residual(t)) << '\n';
  }
}

SolutionCurve solve_ivp(const IVPSpec& spec) {
  SolutionCurve curve(normalize(spec));
  curve.build();
  return curve;
}

double eval_x(const SolutionCurve& curve, double t) { return curve.x(t); }
double eval_xprime(const SolutionCurve& curve, double t) { return curve.xprime(t); }
double energy_residual(const SolutionCurve& curve, double t) { return curve.energy_residual(t); }

namespace {

IVPSpec sine_spec(const Nonlinearity& f_part, const Nonlinearity& g_part) {
  IVPSpec spec;
  spec.f_part = f_part;
  spec.g_part = g_part;
  spec.a = 0.0;
  spec.c1 = 0.0;
  spec.c2 = 1.0;
  spec.lambda = 1.0;
  return spec;
}

}  // namespace

GeneralizedSine::GeneralizedSine(const Nonlinearity& f_part, const Nonlinearity& g_part)
    : curve_(solve_ivp(sine_spec(f_part, g_part))) {}

double sin_gf(const Nonlinearity& f_part, const Nonlinearity& g_part, double t) {
  return GeneralizedSine(f_part, g_part).sin(t);
}

}  // namespace philap
