#include "philap/numerics.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "philap/errors.hpp"

namespace philap {

namespace {

struct Node {
  double complement;  // 1 - |x| on the reference interval [-1, 1]
  double weight;
};

// Abscissae stop once 1 - |x| underflows past this; the weights there are
// far below any representable contribution.
constexpr double kMinComplement = 1e-300;
constexpr double kDropGap = 1e-15;
constexpr int kMinLevel = 3;

Node make_node(double t) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double e = std::exp(-2.0 * u);
  const double complement = 2.0 * e / (1.0 + e);
  const double weight =
      0.5 * std::numbers::pi * std::cosh(t) * complement * (2.0 - complement);
  return {complement, weight};
}

// Level 0 holds t = 1, 2, ...; level n >= 1 holds the odd multiples of 2^-n.
// t = 0 is handled separately.
const std::vector<std::vector<Node>>& node_table() {
  static const std::vector<std::vector<Node>> table = [] {
    std::vector<std::vector<Node>> levels(kQuadMaxLevel + 1);
    for (int level = 0; level <= kQuadMaxLevel; ++level) {
      const double h = std::ldexp(1.0, -level);
      const int stride = level == 0 ? 1 : 2;
      for (long k = level == 0 ? 1 : 1;; k += stride) {
        const Node node = make_node(static_cast<double>(k) * h);
        if (node.complement < kMinComplement) break;
        levels[level].push_back(node);
      }
    }
    return levels;
  }();
  return table;
}

struct LevelSum {
  double value = 0.0;
  double magnitude = 0.0;
};

class TanhSinh {
 public:
  TanhSinh(const GapIntegrand& f, double lo, double hi)
      : f_(f), lo_(lo), hi_(hi), half_(0.5 * (hi - lo)) {}

  double eval_center() {
    const double mid = lo_ + half_;
    const double v = f_(mid, half_, half_);
    check(v, mid, half_);
    return v;
  }

  LevelSum sum_level(int level) {
    const auto& nodes = node_table()[static_cast<std::size_t>(level)];
    terms_.clear();
    abs_terms_.clear();
    for (const Node& node : nodes) {
      const double near = half_ * node.complement;
      const double far = half_ * (2.0 - node.complement);
      const double x_left = lo_ + near;
      const double x_right = hi_ - near;
      add(node, f_(x_left, near, far), x_left, near);
      add(node, f_(x_right, far, near), x_right, near);
    }
    return {pairwise_sum(terms_), pairwise_sum(abs_terms_)};
  }

  double half() const { return half_; }

 private:
  void add(const Node& node, double v, double x, double gap) {
    if (!std::isfinite(v)) {
      if (x == lo_ || x == hi_ || 0.5 * node.complement < kDropGap) return;
      check(v, x, gap);
    }
    terms_.push_back(node.weight * v);
    abs_terms_.push_back(node.weight * std::fabs(v));
  }

  void check(double v, double x, double gap) const {
    if (std::isfinite(v)) return;
    std::ostringstream msg;
    msg << "non-finite integrand value at interior point x=" << x
        << " (distance to endpoint " << gap << ") on [" << lo_ << ", " << hi_
        << "]";
    throw ConvergenceError(msg.str(), std::numeric_limits<double>::infinity());
  }

  const GapIntegrand& f_;
  double lo_;
  double hi_;
  double half_;
  std::vector<double> terms_;
  std::vector<double> abs_terms_;
};

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

QuadResult integrate_singular(const GapIntegrand& f, double lo, double hi,
                              double rel_tol, int max_level, double abs_tol) {
  if (!(lo < hi)) {
    if (lo == hi) return {0.0, 0.0, 0};
    throw DomainError("integrate_singular: requires lo < hi");
  }
  if (!(rel_tol > 0.0)) throw DomainError("integrate_singular: rel_tol must be positive");
  max_level = std::min(max_level, kQuadMaxLevel);

  TanhSinh rule(f, lo, hi);
  const double center = rule.eval_center();
  // Running sums of w * f over all nodes so far (center weight is pi/2).
  std::vector<double> level_values{0.5 * std::numbers::pi * center};
  std::vector<double> level_magnitudes{0.5 * std::numbers::pi * std::fabs(center)};

  double previous = 0.0;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= max_level; ++level) {
    const LevelSum s = rule.sum_level(level);
    level_values.push_back(s.value);
    level_magnitudes.push_back(s.magnitude);
    const double h = std::ldexp(1.0, -level);
    const double estimate = h * rule.half() * pairwise_sum(level_values);
    const double magnitude = h * rule.half() * pairwise_sum(level_magnitudes);
    if (level > 0) {
      err = std::fabs(estimate - previous);
      const bool converged =
          err <= rel_tol * std::fabs(estimate) || err <= abs_tol ||
          err <= 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
      if (level >= kMinLevel && converged) return {estimate, err, level};
    }
    previous = estimate;
  }
  std::ostringstream msg;
  msg << "tanh-sinh quadrature on [" << lo << ", " << hi
      << "] did not converge to rel_tol=" << rel_tol << " within " << max_level
      << " levels (last change " << err << ")";
  throw ConvergenceError(msg.str(), err);
}

QuadResult integrate_singular(const PlainIntegrand& f, double lo, double hi,
                              double rel_tol, int max_level, double abs_tol) {
  const GapIntegrand wrapped = [&f](double x, double, double) { return f(x); };
  return integrate_singular(wrapped, lo, hi, rel_tol, max_level, abs_tol);
}

RootResult brent_solve(const std::function<double(double)>& fun, double lo,
                       double hi, const RootOptions& options) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = lo;
  double b = hi;
  double fa = fun(a);
  double fb = fun(b);
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};
  if (std::isnan(fa) || std::isnan(fb)) {
    throw ConvergenceError("brent: residual is NaN at a bracket endpoint",
                           std::numeric_limits<double>::infinity());
  }
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "brent: no sign change on [" << lo << ", " << hi << "]: f(lo)=" << fa
        << ", f(hi)=" << fb;
    throw BracketError(msg.str(), fa, fb);
  }
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * eps * std::fabs(b) + 0.5 * (options.abs_tol + options.rel_tol * std::fabs(b));
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return {b, iter};
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = fun(b);
    if (std::isnan(fb)) {
      throw ConvergenceError("brent: residual became NaN", std::fabs(c - b));
    }
  }
  throw ConvergenceError("brent: iteration limit reached", std::fabs(c - b));
}

double brent_root(const std::function<double(double)>& fun, double lo, double hi,
                  double tol) {
  return brent_solve(fun, lo, hi, {.abs_tol = tol, .rel_tol = 0.0}).root;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  if (x < 0.5) return gamma_fn(x + 1.0) / x;
  static constexpr std::array<double, 9> kLanczos{
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + g + 0.5;
  // t^(z+1/2) split in two so large arguments do not overflow early.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * std::exp(-t) * half_power *
         series;
}

}  // namespace philap
