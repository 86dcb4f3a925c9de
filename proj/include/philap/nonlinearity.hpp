#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace philap {

/// Extended-real interval endpoint.
struct Bound {
  enum class Kind { finite, neg_inf, pos_inf };
  Kind kind = Kind::finite;
  double value = 0.0;

  static Bound at(double v) { return {Kind::finite, v}; }
  static Bound minus_infinity() { return {Kind::neg_inf, 0.0}; }
  static Bound plus_infinity() { return {Kind::pos_inf, 0.0}; }

  bool is_finite() const { return kind == Kind::finite; }
  /// Infinite kinds map to +-inf.
  double as_double() const;
  Bound shifted(double delta) const;
};

/// Open interval (lo, hi).
struct Interval {
  Bound lo = Bound::minus_infinity();
  Bound hi = Bound::plus_infinity();

  static Interval real_line() { return {}; }
  static Interval open(double lo, double hi) { return {Bound::at(lo), Bound::at(hi)}; }

  /// Strictly inside, keeping 1e-12 * max(1, |bound|) away from finite ends.
  bool contains(double x) const;
  /// Strictly inside, no margin.
  bool contains_open(double x) const;
  Interval shifted(double delta) const { return {lo.shifted(delta), hi.shifted(delta)}; }
  std::string describe() const;
};

enum class Family { power, minkowski, euclidean, shifted, custom };
enum class Branch { minus, plus };

std::string to_string(Family family);

/// Derivative value; `unbounded` marks f' = +inf (power with p < 2 at 0).
struct Slope {
  double value = 0.0;
  bool unbounded = false;
};

/// Callbacks for a user-supplied increasing homeomorphism.
struct CustomFunctions {
  std::function<double(double)> f;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;  // may be empty
  Interval domain;
  Interval codomain;
  double zero_point = 0.0;
  bool odd = false;
  std::string name = "custom";
};

namespace detail {
class NonlinearityImpl;
}

/// Strictly increasing f: (tau1, tau2) -> (sigma1, sigma2) with f(s0) = 0.
///
/// Cheap to copy; all state is immutable and shared.
class Nonlinearity {
 public:
  /// f(t) = |t|^(p-2) t, p > 1.
  static Nonlinearity power(double p);
  /// f(x) = x / sqrt(1 - x^2) on (-1, 1).
  static Nonlinearity minkowski();
  /// f(x) = x / sqrt(1 + x^2) onto (-1, 1).
  static Nonlinearity euclidean();
  /// x -> base(x + s); s must lie inside base's domain. Nested shifts collapse.
  static Nonlinearity shifted(const Nonlinearity& base, double s);
  /// Validated on construction: monotone on samples, f(s0) ~ 0, round trip.
  static Nonlinearity custom(CustomFunctions functions);

  /// Domain-checked evaluation.
  double operator()(double x) const;
  double inverse(double y) const;
  /// Derivative; throws UnsupportedError if the family has none.
  Slope derivative(double x) const;
  bool has_derivative() const;

  /// No boundary checks; for integrands that approach open ends.
  double eval_unchecked(double x) const;
  double inverse_unchecked(double y) const;

  /// f(x + h) - f(x) without cancellation where the family allows.
  double increment(double x, double h) const;

  Family family() const;
  /// p for the power family (also for a shifted power), NaN otherwise.
  double exponent() const;
  /// Accumulated shift for the shifted family, 0 otherwise.
  double shift() const;
  const Interval& domain() const;
  const Interval& codomain() const;
  double zero_point() const;
  bool is_odd() const;
  std::string describe() const;

  /// f^-1 as a Nonlinearity: power(p) <-> power(p/(p-1)), minkowski <-> euclidean.
  Nonlinearity inverted() const;
  /// The shift moving the zero to the origin (identity if already there).
  Nonlinearity normalized() const;

  const detail::NonlinearityImpl& impl() const { return *impl_; }

 private:
  explicit Nonlinearity(std::shared_ptr<const detail::NonlinearityImpl> impl)
      : impl_(std::move(impl)) {}
  friend class detail::NonlinearityImpl;
  std::shared_ptr<const detail::NonlinearityImpl> impl_;
};

/// F(t) = integral of f from s0 to t. Nonnegative, zero only at s0.
class Potential {
 public:
  explicit Potential(Nonlinearity source) : source_(std::move(source)) {}

  /// Domain-checked.
  double operator()(double t) const;
  double eval_unchecked(double t) const;
  /// F(t + h) - F(t) without cancellation near the branch extremes.
  double increment(double t, double h) const;
  /// Unique x on the branch with F(x) = y; RangeError past the supremum.
  double branch_inverse(Branch branch, double y) const;
  /// As branch_inverse, without the supremum check (callers guarantee range).
  double branch_inverse_unchecked(Branch branch, double y) const;
  /// Limit of F at the branch's domain end (+inf if unbounded).
  double supremum(Branch branch) const;
  bool closed_form() const;
  const Nonlinearity& source() const { return source_; }

 private:
  Nonlinearity source_;
};

namespace detail {

class NonlinearityImpl : public std::enable_shared_from_this<NonlinearityImpl> {
 public:
  NonlinearityImpl(Interval domain, Interval codomain, double zero, bool odd)
      : domain_(domain), codomain_(codomain), zero_(zero), odd_(odd) {}
  virtual ~NonlinearityImpl() = default;

  virtual Family family() const = 0;
  virtual double eval(double x) const = 0;
  virtual double inverse(double y) const = 0;
  virtual bool has_derivative() const = 0;
  virtual Slope slope(double x) const = 0;
  virtual double increment(double x, double h) const;
  virtual double potential(double x) const;
  virtual double potential_increment(double x, double h) const;
  virtual double branch_inverse(Branch branch, double y) const;
  virtual double potential_supremum(Branch branch) const;
  virtual bool closed_form_potential() const { return false; }
  virtual std::shared_ptr<const NonlinearityImpl> inverted() const;
  virtual std::string describe() const = 0;
  virtual double exponent() const;
  virtual double shift() const { return 0.0; }

  const Interval& domain() const { return domain_; }
  const Interval& codomain() const { return codomain_; }
  double zero() const { return zero_; }
  bool odd() const { return odd_; }

  static Nonlinearity wrap(std::shared_ptr<const NonlinearityImpl> impl) {
    return Nonlinearity(std::move(impl));
  }

 protected:
  Interval domain_;
  Interval codomain_;
  double zero_;
  bool odd_;
};

}  // namespace detail

/// Serializable subset: built-in families with an optional shift.
struct NonlinearityConfig {
  std::string family = "power";
  double p = 2.0;
  double shift = 0.0;

  std::map<std::string, std::string> to_key_values() const;
  /// Reads `family`, `p`, `shift`; unknown families raise DomainError.
  static NonlinearityConfig from_key_values(const std::map<std::string, std::string>& kv);
};

Nonlinearity make_nonlinearity(const NonlinearityConfig& config);

}  // namespace philap
