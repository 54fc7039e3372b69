#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "symcalc/errors.hpp"
#include "symcalc/expr.hpp"

// Intervals, the restricted domain on which the symmetric difference
// operator lives, and the three pointwise difference operators.

namespace symcalc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// An interval of the extended real line.  Endpoints may be +-infinity.
struct Interval {
  double inf;
  double sup;

  Interval(double lo, double hi) : inf(lo), sup(hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
      throw InvalidParams("interval requires inf < sup");
  }

  static Interval real_line() { return Interval(-kInf, kInf); }

  double measure() const { return sup - inf; }
  bool has_finite_inf() const { return std::isfinite(inf); }
  bool has_finite_sup() const { return std::isfinite(sup); }
  bool contains(double t) const { return t >= inf && t <= sup; }
};

/// Step sizes of the symmetric difference operator.  Both are nonnegative
/// and at least one must be positive.
struct StepParams {
  double alpha;
  double beta;

  StepParams(double a, double b) : alpha(a), beta(b) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(a + b > 0.0))
      throw InvalidParams("alpha and beta must be nonnegative and alpha+beta must be positive");
  }
};

/// An evaluable real function with an explicit domain and a display name.
/// Evaluation outside the domain throws DomainViolation; the wrapped
/// callable may itself throw DomainError (e.g. parsed 1/t at t=0).
class RealFunction {
 public:
  using Fn = std::function<double(double)>;

  RealFunction(std::string name, Interval domain, Fn fn)
      : name_(std::move(name)), domain_(domain), fn_(std::move(fn)) {}

  double operator()(double t) const {
    if (!domain_.contains(t))
      throw DomainViolation("'" + name_ + "' evaluated at t=" + std::to_string(t) +
                            " outside its domain");
    return fn_(t);
  }

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }

  /// Wraps a parsed expression, binding all of its parameters.  Every
  /// parameter occurring in the expression must be present in `params`.
  static RealFunction from_expr(ExprPtr e, Interval domain = Interval::real_line(),
                                ParamMap params = {}, std::string name = {}) {
    std::set<std::string> used;
    collect_parameters(*e, used);
    for (const auto& p : used) {
      if (!params.count(p)) throw UnboundParameter(p);
    }
    if (name.empty()) name = symcalc::to_string(*e);
    return RealFunction(std::move(name), domain,
                        [e, params = std::move(params)](double t) { return eval(*e, t, params); });
  }

  /// Parses `src` and wraps it; convenience for tests and the CLI.
  static RealFunction from_source(std::string_view src,
                                  Interval domain = Interval::real_line(),
                                  ParamMap params = {}) {
    return from_expr(parse(src), domain, std::move(params));
  }

 private:
  std::string name_;
  Interval domain_;
  Fn fn_;
};

/// The set on which the symmetric difference operator with the given steps
/// is defined: the base interval with a closed strip of width beta removed
/// at a finite lower end and a closed strip of width alpha removed at a
/// finite upper end.  Membership is t > lower_cut and t < upper_cut.
class DomainSet {
 public:
  DomainSet(Interval base, double lower_cut, double upper_cut)
      : base_(base), lower_cut_(lower_cut), upper_cut_(upper_cut) {}

  bool contains(double t) const { return t > lower_cut_ && t < upper_cut_; }

  const Interval& base() const noexcept { return base_; }
  double lower_cut() const noexcept { return lower_cut_; }   // -inf when no strip
  double upper_cut() const noexcept { return upper_cut_; }   // +inf when no strip

 private:
  Interval base_;
  double lower_cut_;
  double upper_cut_;
};

/// Builds the restricted domain for the steps `p` over interval `I`:
/// strips [inf I, inf I + beta] when inf I is finite and
/// [sup I - alpha, sup I] when sup I is finite, both closed.
/// Requires |I| > max{alpha, beta}; otherwise throws MeasureTooSmall.
inline DomainSet restricted_domain(const Interval& I, const StepParams& p) {
  if (!(I.measure() > std::max(p.alpha, p.beta)))
    throw MeasureTooSmall("interval measure " + std::to_string(I.measure()) +
                          " is not greater than max step " +
                          std::to_string(std::max(p.alpha, p.beta)));
  const double lower = I.has_finite_inf() ? I.inf + p.beta : -kInf;
  const double upper = I.has_finite_sup() ? I.sup - p.alpha : kInf;
  return DomainSet(I, lower, upper);
}

namespace detail {

// The one shared stencil.  forward_diff and backward_diff are the zero-step
// specializations, so the reduction identities hold bit-for-bit.
inline double symmetric_stencil(const RealFunction& f, double alpha, double beta, double t) {
  return (f(t + alpha) - f(t - beta)) / (alpha + beta);
}

}  // namespace detail

/// Forward difference (f(t+alpha) - f(t)) / alpha.  Defined for t in
/// dom f with the closed strip [sup - alpha, sup] removed at a finite
/// upper end; requires |dom f| > alpha.
inline double forward_diff(const RealFunction& f, double alpha, double t) {
  if (!(alpha > 0.0)) throw InvalidParams("forward_diff requires alpha > 0");
  const Interval& dom = f.domain();
  if (!(dom.measure() > alpha))
    throw MeasureTooSmall("domain measure must exceed alpha");
  const bool inside = dom.contains(t) && (!dom.has_finite_sup() || t < dom.sup - alpha);
  if (!inside)
    throw DomainViolation("t=" + std::to_string(t) + " outside the forward-difference domain");
  return detail::symmetric_stencil(f, alpha, 0.0, t);
}

/// Backward difference (f(t) - f(t-beta)) / beta.  Defined for t in dom f
/// with the closed strip [inf, inf + beta] removed at a finite lower end;
/// requires |dom f| > beta.
inline double backward_diff(const RealFunction& f, double beta, double t) {
  if (!(beta > 0.0)) throw InvalidParams("backward_diff requires beta > 0");
  const Interval& dom = f.domain();
  if (!(dom.measure() > beta))
    throw MeasureTooSmall("domain measure must exceed beta");
  const bool inside = dom.contains(t) && (!dom.has_finite_inf() || t > dom.inf + beta);
  if (!inside)
    throw DomainViolation("t=" + std::to_string(t) + " outside the backward-difference domain");
  return detail::symmetric_stencil(f, 0.0, beta, t);
}

/// Symmetric difference (f(t+alpha) - f(t-beta)) / (alpha+beta) on the
/// restricted domain.  With beta = 0 this is exactly forward_diff, with
/// alpha = 0 exactly backward_diff (same code path, bit-for-bit).
inline double symmetric_diff(const RealFunction& f, const StepParams& p, double t) {
  const DomainSet dom = restricted_domain(f.domain(), p);
  if (!dom.contains(t))
    throw DomainViolation("t=" + std::to_string(t) + " outside the restricted domain");
  return detail::symmetric_stencil(f, p.alpha, p.beta, t);
}

}  // namespace symcalc
