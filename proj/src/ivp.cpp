#include "philap/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "philap/errors.hpp"

namespace philap {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

IVPSpec IVPSpec::particular_case(const Nonlinearity& f, double c, double lambda, double a) {
  const Nonlinearity fn = f.normalized();
  IVPSpec spec;
  spec.f_part = f;
  spec.g_part = fn.inverted();
  spec.a = a;
  spec.c1 = c;
  spec.c2 = fn(c - f.zero_point());
  spec.lambda = lambda;
  spec.particular = true;
  return spec;
}

Problem normalize(const IVPSpec& spec) {
  if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda)) {
    throw DomainError("lambda must be positive, got " + fmt(spec.lambda));
  }
  if (!std::isfinite(spec.a)) throw DomainError("start time a must be finite");
  if (!spec.f_part.domain().contains(spec.c1)) {
    throw DomainError("c1=" + fmt(spec.c1) + " outside the domain " +
                      spec.f_part.domain().describe() + " of " + spec.f_part.describe());
  }
  if (!spec.g_part.domain().contains(spec.c2)) {
    throw DomainError("c2=" + fmt(spec.c2) + " outside the domain " +
                      spec.g_part.domain().describe() + " of " + spec.g_part.describe());
  }
  if (!spec.g_part.domain().contains(0.0) || std::fabs(spec.g_part(0.0)) > 1e-14) {
    throw DomainError("g must vanish at 0 (" + spec.g_part.describe() + ")");
  }
  const Nonlinearity f = spec.f_part.normalized();
  const Nonlinearity g_inv = spec.g_part.inverted();
  Problem problem{spec,
                  f,
                  spec.g_part,
                  g_inv,
                  Potential(f),
                  Potential(g_inv),
                  spec.f_part.zero_point(),
                  spec.c1 - spec.f_part.zero_point(),
                  spec.g_part(spec.c2),
                  spec.lambda,
                  0.0};
  problem.k = problem.lambda * problem.F.eval_unchecked(problem.x0) +
              problem.G.eval_unchecked(problem.y0);
  return problem;
}

Solvability classify(const Problem& problem) {
  Solvability s;
  s.k = problem.k;
  s.local_bound = std::min(problem.G.supremum(Branch::minus), problem.G.supremum(Branch::plus));
  s.global_bound = problem.lambda * std::min(problem.F.supremum(Branch::minus),
                                             problem.F.supremum(Branch::plus));
  s.local = s.k < s.local_bound;
  s.global = s.local && s.k < s.global_bound;
  return s;
}

Solvability classify(const IVPSpec& spec) { return classify(normalize(spec)); }

void require_global(const Problem& problem) {
  const Solvability s = classify(problem);
  if (s.global) return;
  const IVPSpec& spec = problem.spec;
  std::ostringstream msg;
  msg.precision(17);
  if (spec.particular) {
    const double Fc = problem.F.eval_unchecked(problem.x0);
    const double lam = problem.lambda;
    const double bound = s.local_bound;
    if (!s.local) {
      msg << "infeasible: (1+lambda)F(c) = " << (1.0 + lam) * Fc
          << " is not below min{F(tau1),F(tau2)} = " << bound;
    } else {
      msg << "infeasible: (1+1/lambda)F(c) = " << (1.0 + 1.0 / lam) * Fc
          << " is not below min{F(tau1),F(tau2)} = " << s.global_bound / lam;
    }
    if (problem.f.family() == Family::minkowski) {
      const double r1 = std::sqrt(lam * (lam + 2.0)) / (lam + 1.0);
      const double r2 = std::sqrt(2.0 * lam + 1.0) / (lam + 1.0);
      msg << "; for minkowski this requires |c| < min{sqrt(lambda(lambda+2))/(lambda+1), "
             "sqrt(2 lambda+1)/(lambda+1)} = "
          << std::min(r1, r2);
    }
  } else if (!s.local) {
    msg << "infeasible: k = lambda F(c1) + G(g(c2)) = " << s.k
        << " is not below min{G(sigma3),G(sigma4)} = " << s.local_bound
        << " (local solvability)";
  } else {
    msg << "infeasible: k = " << s.k << " is not below lambda min{F(tau1),F(tau2)} = "
        << s.global_bound << " (global periodicity)";
  }
  throw InfeasibleError(msg.str());
}

}  // namespace philap
