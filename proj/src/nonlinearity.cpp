#include "philap/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "philap/errors.hpp"
#include "philap/numerics.hpp"

namespace philap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryMargin = 1e-12;
constexpr double kPotentialTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// (1 - x)(1 + x), exact to rounding near |x| = 1.
double one_minus_square(double x) { return (1.0 - x) * (1.0 + x); }

using detail::NonlinearityImpl;

class PowerImpl final : public NonlinearityImpl {
 public:
  // f(x) = sgn(x)|x|^e with e = p - 1; ie = 1/e kept separately so that
  // inverting twice returns the same pair bit for bit.
  PowerImpl(double e, double ie)
      : NonlinearityImpl(Interval::real_line(), Interval::real_line(), 0.0, true),
        e_(e),
        ie_(ie),
        p_(e + 1.0) {}

  Family family() const override { return Family::power; }
  double eval(double x) const override { return sign(x) * std::pow(std::fabs(x), e_); }
  double inverse(double y) const override { return sign(y) * std::pow(std::fabs(y), ie_); }
  bool has_derivative() const override { return true; }

  Slope slope(double x) const override {
    if (x == 0.0) {
      if (e_ < 1.0) return {kInf, true};
      return {e_ == 1.0 ? 1.0 : 0.0, false};
    }
    return {e_ * std::pow(std::fabs(x), e_ - 1.0), false};
  }

  double increment(double x, double h) const override {
    if (x == 0.0) return eval(h);
    const double ratio = h / x;
    if (ratio <= -1.0) return eval(x + h) - eval(x);
    return eval(x) * std::expm1(e_ * std::log1p(ratio));
  }

  double potential(double x) const override { return std::pow(std::fabs(x), p_) / p_; }

  double potential_increment(double x, double h) const override {
    if (x == 0.0) return potential(h);
    const double ratio = h / x;
    if (ratio <= -1.0) return potential(x + h) - potential(x);
    return potential(x) * std::expm1(p_ * std::log1p(ratio));
  }

  double branch_inverse(Branch branch, double y) const override {
    const double r = std::pow(p_ * y, 1.0 / p_);
    return branch == Branch::plus ? r : -r;
  }

  double potential_supremum(Branch) const override { return kInf; }
  bool closed_form_potential() const override { return true; }

  std::shared_ptr<const NonlinearityImpl> inverted() const override {
    return std::make_shared<PowerImpl>(ie_, e_);
  }

  std::string describe() const override { return "power(p=" + fmt(p_) + ")"; }
  double exponent() const override { return p_; }

 private:
  double e_;
  double ie_;
  double p_;
};

class MinkowskiImpl final : public NonlinearityImpl {
 public:
  MinkowskiImpl()
      : NonlinearityImpl(Interval::open(-1.0, 1.0), Interval::real_line(), 0.0, true) {}

  Family family() const override { return Family::minkowski; }
  double eval(double x) const override { return x / std::sqrt(one_minus_square(x)); }
  double inverse(double y) const override { return y / std::sqrt(1.0 + y * y); }
  bool has_derivative() const override { return true; }

  Slope slope(double x) const override {
    return {std::pow(one_minus_square(x), -1.5), false};
  }

  double increment(double x, double h) const override {
    const double u = x + h;
    if (x == 0.0) return eval(u);
    if (u * x <= 0.0) return eval(u) - eval(x);
    const double rx = std::sqrt(one_minus_square(x));
    const double ru = std::sqrt((1.0 - x - h) * (1.0 + u));
    return h * (u + x) / ((u * rx + x * ru) * ru * rx);
  }

  double potential(double x) const override {
    return x * x / (1.0 + std::sqrt(one_minus_square(x)));
  }

  double potential_increment(double x, double h) const override {
    const double u = x + h;
    const double rx = std::sqrt(one_minus_square(x));
    const double ru = std::sqrt((1.0 - x - h) * (1.0 + u));
    return h * (u + x) / (rx + ru);
  }

  double branch_inverse(Branch branch, double y) const override {
    const double r = std::sqrt(y * (2.0 - y));
    return branch == Branch::plus ? r : -r;
  }

  double potential_supremum(Branch) const override { return 1.0; }
  bool closed_form_potential() const override { return true; }
  std::shared_ptr<const NonlinearityImpl> inverted() const override;
  std::string describe() const override { return "minkowski"; }
};

class EuclideanImpl final : public NonlinearityImpl {
 public:
  EuclideanImpl()
      : NonlinearityImpl(Interval::real_line(), Interval::open(-1.0, 1.0), 0.0, true) {}

  Family family() const override { return Family::euclidean; }
  double eval(double x) const override { return x / std::sqrt(1.0 + x * x); }
  double inverse(double y) const override { return y / std::sqrt(one_minus_square(y)); }
  bool has_derivative() const override { return true; }

  Slope slope(double x) const override { return {std::pow(1.0 + x * x, -1.5), false}; }

  double increment(double x, double h) const override {
    const double u = x + h;
    if (x == 0.0) return eval(u);
    if (u * x <= 0.0) return eval(u) - eval(x);
    const double rx = std::sqrt(1.0 + x * x);
    const double ru = std::sqrt(1.0 + u * u);
    return h * (u + x) / ((u * rx + x * ru) * ru * rx);
  }

  double potential(double x) const override { return x * x / (std::sqrt(1.0 + x * x) + 1.0); }

  double potential_increment(double x, double h) const override {
    const double u = x + h;
    return h * (u + x) / (std::sqrt(1.0 + u * u) + std::sqrt(1.0 + x * x));
  }

  double branch_inverse(Branch branch, double y) const override {
    const double r = std::sqrt(y * (2.0 + y));
    return branch == Branch::plus ? r : -r;
  }

  double potential_supremum(Branch) const override { return kInf; }
  bool closed_form_potential() const override { return true; }

  std::shared_ptr<const NonlinearityImpl> inverted() const override {
    return std::make_shared<MinkowskiImpl>();
  }

  std::string describe() const override { return "euclidean"; }
};

std::shared_ptr<const NonlinearityImpl> MinkowskiImpl::inverted() const {
  return std::make_shared<EuclideanImpl>();
}

class ShiftedImpl final : public NonlinearityImpl {
 public:
  ShiftedImpl(std::shared_ptr<const NonlinearityImpl> base, double s)
      : NonlinearityImpl(base->domain().shifted(-s), base->codomain(), base->zero() - s,
                         base->odd() && s == 0.0),
        base_(std::move(base)),
        s_(s) {}

  Family family() const override { return Family::shifted; }
  double eval(double x) const override { return base_->eval(x + s_); }
  double inverse(double y) const override { return base_->inverse(y) - s_; }
  bool has_derivative() const override { return base_->has_derivative(); }
  Slope slope(double x) const override { return base_->slope(x + s_); }
  double increment(double x, double h) const override { return base_->increment(x + s_, h); }
  double potential(double x) const override { return base_->potential(x + s_); }

  double potential_increment(double x, double h) const override {
    return base_->potential_increment(x + s_, h);
  }

  double branch_inverse(Branch branch, double y) const override {
    return base_->branch_inverse(branch, y) - s_;
  }

  double potential_supremum(Branch branch) const override {
    return base_->potential_supremum(branch);
  }

  bool closed_form_potential() const override { return base_->closed_form_potential(); }
  std::string describe() const override {
    return "shifted(" + base_->describe() + ", s=" + fmt(s_) + ")";
  }
  double exponent() const override { return base_->exponent(); }
  double shift() const override { return s_; }
  const std::shared_ptr<const NonlinearityImpl>& base() const { return base_; }

 private:
  std::shared_ptr<const NonlinearityImpl> base_;
  double s_;
};

class CustomImpl final : public NonlinearityImpl {
 public:
  explicit CustomImpl(CustomFunctions fns)
      : NonlinearityImpl(fns.domain, fns.codomain, fns.zero_point, fns.odd),
        fns_(std::move(fns)) {}

  Family family() const override { return Family::custom; }
  double eval(double x) const override { return fns_.f(x); }
  double inverse(double y) const override { return fns_.inverse(y); }
  bool has_derivative() const override { return static_cast<bool>(fns_.derivative); }

  Slope slope(double x) const override {
    if (!fns_.derivative) {
      throw UnsupportedError("custom nonlinearity '" + fns_.name + "' has no derivative");
    }
    const double d = fns_.derivative(x);
    if (std::isinf(d)) return {kInf, true};
    return {d, false};
  }

  std::string describe() const override { return fns_.name; }

 private:
  CustomFunctions fns_;
};

// Sample points spread over an interval, for construction-time validation.
std::vector<double> validation_samples(const Interval& domain, double zero) {
  std::vector<double> xs;
  const double lo = domain.lo.as_double();
  const double hi = domain.hi.as_double();
  constexpr int kPerSide = 12;
  for (int i = 1; i <= kPerSide; ++i) {
    const double frac = static_cast<double>(i) / (kPerSide + 1);
    const double left = std::isfinite(lo) ? zero - (zero - lo) * frac : zero - std::ldexp(1.0, i - 4);
    const double right = std::isfinite(hi) ? zero + (hi - zero) * frac : zero + std::ldexp(1.0, i - 4);
    xs.push_back(left);
    xs.push_back(right);
  }
  xs.push_back(zero);
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

double Bound::as_double() const {
  switch (kind) {
    case Kind::neg_inf:
      return -kInf;
    case Kind::pos_inf:
      return kInf;
    case Kind::finite:
      break;
  }
  return value;
}

Bound Bound::shifted(double delta) const {
  return is_finite() ? Bound::at(value + delta) : *this;
}

bool Interval::contains(double x) const {
  if (!std::isfinite(x)) return false;
  if (lo.is_finite() && !(x > lo.value + kBoundaryMargin * std::max(1.0, std::fabs(lo.value)))) {
    return false;
  }
  if (hi.is_finite() && !(x < hi.value - kBoundaryMargin * std::max(1.0, std::fabs(hi.value)))) {
    return false;
  }
  return true;
}

bool Interval::contains_open(double x) const {
  return x > lo.as_double() && x < hi.as_double();
}

std::string Interval::describe() const {
  auto side = [](const Bound& b) {
    if (b.kind == Bound::Kind::neg_inf) return std::string("-inf");
    if (b.kind == Bound::Kind::pos_inf) return std::string("+inf");
    return fmt(b.value);
  };
  return "(" + side(lo) + ", " + side(hi) + ")";
}

std::string to_string(Family family) {
  switch (family) {
    case Family::power:
      return "power";
    case Family::minkowski:
      return "minkowski";
    case Family::euclidean:
      return "euclidean";
    case Family::shifted:
      return "shifted";
    case Family::custom:
      return "custom";
  }
  return "unknown";
}

namespace detail {

double NonlinearityImpl::exponent() const { return std::numeric_limits<double>::quiet_NaN(); }

double NonlinearityImpl::increment(double x, double h) const {
  if (h == 0.0) return 0.0;
  if (has_derivative()) {
    const double lo = std::min(x, x + h);
    const double hi = std::max(x, x + h);
    const PlainIntegrand df = [this](double s) { return slope(s).value; };
    const double v = integrate_singular(df, lo, hi, kPotentialTol).value;
    return h > 0.0 ? v : -v;
  }
  return eval(x + h) - eval(x);
}

double NonlinearityImpl::potential(double x) const {
  if (x == zero_) return 0.0;
  return potential_increment(zero_, x - zero_);
}

double NonlinearityImpl::potential_increment(double x, double h) const {
  if (h == 0.0) return 0.0;
  const double lo = std::min(x, x + h);
  const double hi = std::max(x, x + h);
  const PlainIntegrand f = [this](double s) { return eval(s); };
  const double v = integrate_singular(f, lo, hi, kPotentialTol).value;
  return h > 0.0 ? v : -v;
}

double NonlinearityImpl::potential_supremum(Branch branch) const {
  const Bound& end = branch == Branch::plus ? domain_.hi : domain_.lo;
  if (!end.is_finite()) return kInf;
  const double lo = std::min(zero_, end.value);
  const double hi = std::max(zero_, end.value);
  const GapIntegrand f = [this, lo, hi](double s, double, double) {
    if (s <= lo || s >= hi) return std::numeric_limits<double>::quiet_NaN();
    return std::fabs(eval(s));
  };
  try {
    return integrate_singular(f, lo, hi, kPotentialTol).value;
  } catch (const ConvergenceError&) {
    return kInf;
  }
}

double NonlinearityImpl::branch_inverse(Branch branch, double y) const {
  if (y == 0.0) return zero_;
  const double dir = branch == Branch::plus ? 1.0 : -1.0;
  const Bound& end = branch == Branch::plus ? domain_.hi : domain_.lo;
  const auto level = [&](double x) { return potential(x) - y; };

  double inner = zero_;
  double outer = zero_;
  bool found = false;
  for (int k = 0; k < 1100 && !found; ++k) {
    if (end.is_finite()) {
      outer = zero_ + (end.value - zero_) * -std::expm1(-std::log(2.0) * (k + 1));
    } else {
      outer = zero_ + dir * std::ldexp(1.0, k - 4);
    }
    if (!std::isfinite(outer) || !domain_.contains_open(outer)) break;
    if (level(outer) >= 0.0) {
      found = true;
    } else {
      inner = outer;
    }
  }
  if (!found) {
    throw RangeError("F branch inverse: level " + fmt(y) + " not reached before the " +
                     std::string(branch == Branch::plus ? "upper" : "lower") +
                     " domain end of " + describe());
  }
  return brent_solve(level, std::min(inner, outer), std::max(inner, outer),
                     {.abs_tol = 1e-13, .rel_tol = 1e-13, .max_iterations = 200})
      .root;
}

std::shared_ptr<const NonlinearityImpl> NonlinearityImpl::inverted() const {
  auto self = shared_from_this();
  CustomFunctions fns;
  fns.f = [self](double y) { return self->inverse(y); };
  fns.inverse = [self](double x) { return self->eval(x); };
  if (self->has_derivative()) {
    fns.derivative = [self](double y) {
      const Slope s = self->slope(self->inverse(y));
      if (s.unbounded) return 0.0;
      return 1.0 / s.value;
    };
  }
  fns.domain = codomain_;
  fns.codomain = domain_;
  fns.zero_point = eval(zero_);
  fns.odd = odd_;
  fns.name = "inverse(" + describe() + ")";
  return std::make_shared<CustomImpl>(std::move(fns));
}

}  // namespace detail

Nonlinearity Nonlinearity::power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("power nonlinearity requires p > 1, got p=" + fmt(p));
  }
  return Nonlinearity(std::make_shared<PowerImpl>(p - 1.0, 1.0 / (p - 1.0)));
}

Nonlinearity Nonlinearity::minkowski() { return Nonlinearity(std::make_shared<MinkowskiImpl>()); }

Nonlinearity Nonlinearity::euclidean() { return Nonlinearity(std::make_shared<EuclideanImpl>()); }

Nonlinearity Nonlinearity::shifted(const Nonlinearity& base, double s) {
  if (!base.domain().contains(s)) {
    throw DomainError("shift s0=" + fmt(s) + " is outside the domain " +
                      base.domain().describe() + " of " + base.describe());
  }
  if (s == 0.0) return base;
  if (const auto* inner = dynamic_cast<const ShiftedImpl*>(base.impl_.get())) {
    const double total = inner->shift() + s;
    if (total == 0.0) return Nonlinearity(inner->base());
    return Nonlinearity(std::make_shared<ShiftedImpl>(inner->base(), total));
  }
  return Nonlinearity(std::make_shared<ShiftedImpl>(base.impl_, s));
}

Nonlinearity Nonlinearity::custom(CustomFunctions functions) {
  if (!functions.f || !functions.inverse) {
    throw DomainError("custom nonlinearity requires f and its inverse");
  }
  const double zero = functions.zero_point;
  if (!functions.domain.contains_open(zero)) {
    throw DomainError("custom nonlinearity: zero point outside domain");
  }
  if (std::fabs(functions.f(zero)) > 1e-14) {
    throw DomainError("custom nonlinearity: |f(s0)| = " + fmt(std::fabs(functions.f(zero))) +
                      " exceeds 1e-14");
  }
  const std::vector<double> xs = validation_samples(functions.domain, zero);
  double prev = -kInf;
  for (double x : xs) {
    const double fx = functions.f(x);
    if (!(fx > prev)) {
      throw DomainError("custom nonlinearity is not strictly increasing near x=" + fmt(x));
    }
    prev = fx;
    const double back = functions.inverse(fx);
    if (!(std::fabs(back - x) <= 1e-12 * (1.0 + std::fabs(x)))) {
      throw DomainError("custom nonlinearity: inverse round trip fails at x=" + fmt(x));
    }
  }
  return Nonlinearity(std::make_shared<CustomImpl>(std::move(functions)));
}

double Nonlinearity::operator()(double x) const {
  if (!impl_->domain().contains(x)) {
    throw DomainError(describe() + ": argument " + fmt(x) + " outside domain " +
                      impl_->domain().describe());
  }
  return impl_->eval(x);
}

double Nonlinearity::inverse(double y) const {
  if (!impl_->codomain().contains(y)) {
    throw DomainError(describe() + ": inverse argument " + fmt(y) + " outside codomain " +
                      impl_->codomain().describe());
  }
  return impl_->inverse(y);
}

Slope Nonlinearity::derivative(double x) const {
  if (!impl_->has_derivative()) {
    throw UnsupportedError(describe() + " has no derivative");
  }
  if (!impl_->domain().contains(x)) {
    throw DomainError(describe() + ": derivative argument " + fmt(x) + " outside domain");
  }
  return impl_->slope(x);
}

bool Nonlinearity::has_derivative() const { return impl_->has_derivative(); }
double Nonlinearity::eval_unchecked(double x) const { return impl_->eval(x); }
double Nonlinearity::inverse_unchecked(double y) const { return impl_->inverse(y); }
double Nonlinearity::increment(double x, double h) const { return impl_->increment(x, h); }
Family Nonlinearity::family() const { return impl_->family(); }
double Nonlinearity::exponent() const { return impl_->exponent(); }
double Nonlinearity::shift() const { return impl_->shift(); }
const Interval& Nonlinearity::domain() const { return impl_->domain(); }
const Interval& Nonlinearity::codomain() const { return impl_->codomain(); }
double Nonlinearity::zero_point() const { return impl_->zero(); }
bool Nonlinearity::is_odd() const { return impl_->odd(); }
std::string Nonlinearity::describe() const { return impl_->describe(); }
Nonlinearity Nonlinearity::inverted() const { return Nonlinearity(impl_->inverted()); }

Nonlinearity Nonlinearity::normalized() const {
  const double s0 = zero_point();
  if (s0 == 0.0) return *this;
  return shifted(*this, s0);
}

double Potential::operator()(double t) const {
  if (!source_.domain().contains(t)) {
    throw DomainError("potential of " + source_.describe() + ": argument " + fmt(t) +
                      " outside domain " + source_.domain().describe());
  }
  return source_.impl().potential(t);
}

double Potential::eval_unchecked(double t) const { return source_.impl().potential(t); }

double Potential::increment(double t, double h) const {
  return source_.impl().potential_increment(t, h);
}

double Potential::branch_inverse(Branch branch, double y) const {
  if (!(y >= 0.0)) {
    throw DomainError("branch inverse requires a nonnegative level, got " + fmt(y));
  }
  const double sup = supremum(branch);
  if (!(y < sup)) {
    throw RangeError("level " + fmt(y) + " is not below the supremum F(" +
                     std::string(branch == Branch::plus ? "tau2" : "tau1") + ")=" + fmt(sup) +
                     " of the potential of " + source_.describe());
  }
  return source_.impl().branch_inverse(branch, y);
}

double Potential::branch_inverse_unchecked(Branch branch, double y) const {
  return source_.impl().branch_inverse(branch, y);
}

double Potential::supremum(Branch branch) const {
  return source_.impl().potential_supremum(branch);
}

bool Potential::closed_form() const { return source_.impl().closed_form_potential(); }

std::map<std::string, std::string> NonlinearityConfig::to_key_values() const {
  std::map<std::string, std::string> kv{{"family", family}, {"shift", fmt(shift)}};
  if (family == "power") kv["p"] = fmt(p);
  return kv;
}

NonlinearityConfig NonlinearityConfig::from_key_values(
    const std::map<std::string, std::string>& kv) {
  NonlinearityConfig config;
  auto number = [](const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw DomainError("key '" + key + "': not a number: '" + text + "'");
    }
    return v;
  };
  if (auto it = kv.find("family"); it != kv.end()) config.family = it->second;
  if (auto it = kv.find("p"); it != kv.end()) config.p = number("p", it->second);
  if (auto it = kv.find("shift"); it != kv.end()) config.shift = number("shift", it->second);
  return config;
}

Nonlinearity make_nonlinearity(const NonlinearityConfig& config) {
  Nonlinearity base = [&] {
    if (config.family == "power") return Nonlinearity::power(config.p);
    if (config.family == "minkowski") return Nonlinearity::minkowski();
    if (config.family == "euclidean") return Nonlinearity::euclidean();
    throw DomainError("unknown family '" + config.family +
                      "' (expected power, minkowski or euclidean)");
  }();
  if (config.shift == 0.0) return base;
  return Nonlinearity::shifted(base, config.shift);
}

}  // namespace philap
