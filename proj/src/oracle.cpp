#include "philap/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "philap/errors.hpp"
#include "philap/numerics.hpp"

namespace philap {

namespace {

std::string fmt17(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

struct Field {
  Nonlinearity f;
  Nonlinearity g_inv;
  double lambda;

  PhaseState operator()(const PhaseState& s, double t) const {
    if (!f.domain().contains_open(s.x) || !g_inv.domain().contains_open(s.y) ||
        !std::isfinite(s.x) || !std::isfinite(s.y)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "oracle state (x=" << s.x << ", y=" << s.y << ") left the phase-space rectangle "
          << f.domain().describe() << " x " << g_inv.domain().describe() << " near t=" << t;
      throw BlowUpError(msg.str(), t);
    }
    return {g_inv.eval_unchecked(s.y), -lambda * f.eval_unchecked(s.x)};
  }
};

Field field_of(const IVPSpec& spec) {
  return {spec.f_part, spec.g_part.inverted(), spec.lambda};
}

PhaseState axpy(const PhaseState& s, double h, const PhaseState& d) {
  return {s.x + h * d.x, s.y + h * d.y};
}

double hermite(double t0, double t1, double x0, double x1, double d0, double d1, double t) {
  const double h = t1 - t0;
  const double u = (t - t0) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * x0 + (u3 - 2 * u2 + u) * h * d0 + (-2 * u3 + 3 * u2) * x1 +
         (u3 - u2) * h * d1;
}

}  // namespace

double Trajectory::xprime(const PhaseState& s) const {
  return spec.g_part.inverted().eval_unchecked(s.y);
}

PhaseState Trajectory::interpolate(double t) const {
  if (times.empty()) throw DomainError("empty trajectory");
  const bool ascending = times.back() >= times.front();
  const double lo = ascending ? times.front() : times.back();
  const double hi = ascending ? times.back() : times.front();
  if (t < lo || t > hi) {
    throw RangeError("t=" + fmt17(t) + " outside trajectory span [" + fmt17(lo) + ", " +
                     fmt17(hi) + "]");
  }
  if (times.size() == 1) return states.front();
  // Uniform grid: locate the interval directly.
  const double h = times[1] - times[0];
  std::size_t i = static_cast<std::size_t>(std::floor((t - times[0]) / h));
  i = std::min(i, times.size() - 2);
  const Field field = field_of(spec);
  const PhaseState d0 = field(states[i], times[i]);
  const PhaseState d1 = field(states[i + 1], times[i + 1]);
  return {hermite(times[i], times[i + 1], states[i].x, states[i + 1].x, d0.x, d1.x, t),
          hermite(times[i], times[i + 1], states[i].y, states[i + 1].y, d0.y, d1.y, t)};
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "t,x,y\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << fmt17(times[i]) << ',' << fmt17(states[i].x) << ',' << fmt17(states[i].y) << '\n';
  }
}

Trajectory integrate_planar(const IVPSpec& spec, double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("oracle step must be positive");
  if (!std::isfinite(t_end)) throw DomainError("t_end must be finite");
  const Field field = field_of(spec);
  const double span = t_end - spec.a;
  const auto n = static_cast<std::size_t>(std::max(0.0, std::ceil(std::fabs(span) / step - 1e-9)));
  const double h = n == 0 ? 0.0 : span / static_cast<double>(n);

  Trajectory traj;
  traj.spec = spec;
  traj.step = std::fabs(h);
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  PhaseState s{spec.c1, spec.g_part(spec.c2)};
  traj.times.push_back(spec.a);
  traj.states.push_back(s);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = spec.a + h * static_cast<double>(i);
    const PhaseState k1 = field(s, t);
    const PhaseState k2 = field(axpy(s, 0.5 * h, k1), t + 0.5 * h);
    const PhaseState k3 = field(axpy(s, 0.5 * h, k2), t + 0.5 * h);
    const PhaseState k4 = field(axpy(s, h, k3), t + h);
    s = {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
         s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
    field(s, t + h);
    traj.times.push_back(spec.a + h * static_cast<double>(i + 1));
    traj.states.push_back(s);
  }
  return traj;
}

double detect_period(const Trajectory& traj) {
  const IVPSpec& spec = traj.spec;
  if (spec.c2 == 0.0) {
    throw DomainError("period detection needs c2 != 0 to orient the section x = c1");
  }
  if (traj.times.size() < 3 || traj.times[1] <= traj.times[0]) {
    throw DomainError("period detection needs a forward trajectory");
  }
  const double dir = spec.c2 > 0.0 ? 1.0 : -1.0;
  const Field field = field_of(spec);
  // Wait until the orbit has left the section on the far side before looking
  // for the return crossing.
  bool left = false;
  for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
    const double s0 = dir * (traj.states[i].x - spec.c1);
    const double s1 = dir * (traj.states[i + 1].x - spec.c1);
    if (s0 < 0.0) left = true;
    if (!left || !(s0 < 0.0 && s1 >= 0.0)) continue;
    const double t0 = traj.times[i];
    const double t1 = traj.times[i + 1];
    const double x0 = traj.states[i].x;
    const double x1 = traj.states[i + 1].x;
    const double d0 = field(traj.states[i], t0).x;
    const double d1 = field(traj.states[i + 1], t1).x;
    const auto section = [&](double t) { return hermite(t0, t1, x0, x1, d0, d1, t) - spec.c1; };
    const double t_star = brent_solve(section, t0, t1, {.abs_tol = 1e-15 * std::max(1.0, std::fabs(t1)),
                                                        .rel_tol = 1e-15,
                                                        .max_iterations = 200})
                              .root;
    return t_star - spec.a;
  }
  throw ConvergenceError("no return to the section x = c1 within t_end = " +
                             fmt17(traj.times.back()) + "; integrate longer",
                         std::numeric_limits<double>::infinity());
}

double default_oracle_step(const IVPSpec& spec) {
  const Problem pr = normalize(spec);
  if (pr.degenerate()) return 1e-3;
  const double level = pr.k / pr.lambda;
  const double width = pr.F.branch_inverse(Branch::plus, level) -
                       pr.F.branch_inverse(Branch::minus, level);
  return width / 1e4;
}

std::vector<PhaseState> sample_planar(const IVPSpec& spec, const std::vector<double>& times,
                                      double max_step) {
  std::vector<PhaseState> out;
  if (times.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(times.begin(), times.end());
  Trajectory forward;
  Trajectory backward;
  if (*hi_it > spec.a) forward = integrate_planar(spec, *hi_it, max_step);
  if (*lo_it < spec.a) {
    backward = integrate_planar(spec, *lo_it, max_step);
    std::reverse(backward.times.begin(), backward.times.end());
    std::reverse(backward.states.begin(), backward.states.end());
  }
  out.reserve(times.size());
  for (double t : times) {
    if (t == spec.a) {
      out.push_back({spec.c1, spec.g_part(spec.c2)});
    } else if (t > spec.a) {
      out.push_back(forward.interpolate(t));
    } else {
      out.push_back(backward.interpolate(t));
    }
  }
  return out;
}

}  // namespace philap
