#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symcalc/core.hpp"
#include "symcalc/series.hpp"

// Noerlund-sum integrals: the forward integral built from tails
// alpha * sum_{k>=0} f(x + k*alpha), the backward integral built from
// tails beta * sum_{k>=0} f(x - k*beta), and their convex combination.
// Bounds are arbitrary real points, not lattice points.

namespace symcalc {

enum class IntegralKind { Forward, Backward, Symmetric };

inline const char* to_cstring(IntegralKind k) {
  switch (k) {
    case IntegralKind::Forward: return "forward";
    case IntegralKind::Backward: return "backward";
    case IntegralKind::Symmetric: return "symmetric";
  }
  return "?";
}

/// Integral value plus per-tail convergence diagnostics: two tails for the
/// forward/backward kinds, four for the symmetric kind (fewer when a zero
/// step reduces it to a single-sided integral, or when the bounds are equal
/// and no tail is evaluated).
struct IntegralResult {
  double value = 0.0;
  IntegralKind kind = IntegralKind::Forward;
  std::vector<SeriesResult> tails;

  bool all_tails_converged() const {
    for (const auto& t : tails)
      if (!t.converged) return false;
    return true;
  }
};

/// A defining tail series failed the convergence criterion; carries the
/// partial result with full diagnostics.
class NotIntegrable : public Error {
 public:
  explicit NotIntegrable(IntegralResult partial)
      : Error(std::string(to_cstring(partial.kind)) +
              " integral: a defining tail series did not converge"),
        partial_(std::move(partial)) {}

  const IntegralResult& partial() const noexcept { return partial_; }

 private:
  IntegralResult partial_;
};

/// Tail alpha * sum_{k>=0} f(x + k*alpha), stopped by the policy's
/// convergence criterion.  A diverged tail is reported in-band with
/// converged = false; an evaluation domain error aborts by throwing.
inline SeriesResult forward_tail_sum(const RealFunction& f, double alpha, double x,
                                     const SummationPolicy& pol = {}) {
  if (!(alpha > 0.0)) throw InvalidParams("forward tail requires alpha > 0");
  return sum_series([&](std::size_t k) { return alpha * f(x + static_cast<double>(k) * alpha); },
                    pol);
}

/// Tail beta * sum_{k>=0} f(x - k*beta); mirror of forward_tail_sum.
inline SeriesResult backward_tail_sum(const RealFunction& f, double beta, double x,
                                      const SummationPolicy& pol = {}) {
  if (!(beta > 0.0)) throw InvalidParams("backward tail requires beta > 0");
  return sum_series([&](std::size_t k) { return beta * f(x - static_cast<double>(k) * beta); },
                    pol);
}

namespace detail {

// Shared by the public integrals: computes the tail difference without
// throwing so the symmetric integral can assemble all four diagnostics.
// Convention extensions beyond the tail-difference definition: equal bounds
// give 0 with no tails evaluated, and reversed bounds negate.
template <typename TailFn>
IntegralResult integral_from_tails(IntegralKind kind, TailFn&& tail, double a, double b,
                                   bool lower_anchor_positive) {
  IntegralResult res;
  res.kind = kind;
  if (a == b) return res;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const SeriesResult ta = tail(a);
  const SeriesResult tb = tail(b);
  res.tails = {ta, tb};
  // forward: tail(a) - tail(b); backward: tail(b) - tail(a)
  const double diff = lower_anchor_positive ? ta.value - tb.value : tb.value - ta.value;
  res.value = sign * diff;
  return res;
}

inline IntegralResult forward_integral_partial(const RealFunction& f, double alpha, double a,
                                               double b, const SummationPolicy& pol) {
  return integral_from_tails(
      IntegralKind::Forward, [&](double x) { return forward_tail_sum(f, alpha, x, pol); }, a, b,
      /*lower_anchor_positive=*/true);
}

inline IntegralResult backward_integral_partial(const RealFunction& f, double beta, double a,
                                                double b, const SummationPolicy& pol) {
  return integral_from_tails(
      IntegralKind::Backward, [&](double x) { return backward_tail_sum(f, beta, x, pol); }, a, b,
      /*lower_anchor_positive=*/false);
}

}  // namespace detail

/// Forward integral of f from a to b: tail(a) - tail(b).  Both tails must
/// converge on their own; otherwise throws NotIntegrable with diagnostics.
inline IntegralResult forward_integral(const RealFunction& f, double alpha, double a, double b,
                                       const SummationPolicy& pol = {}) {
  IntegralResult res = detail::forward_integral_partial(f, alpha, a, b, pol);
  if (!res.all_tails_converged()) throw NotIntegrable(std::move(res));
  return res;
}

/// Backward integral of f from a to b, tails anchored at the -infinity
/// side: tail(b) - tail(a).
inline IntegralResult backward_integral(const RealFunction& f, double beta, double a, double b,
                                        const SummationPolicy& pol = {}) {
  IntegralResult res = detail::backward_integral_partial(f, beta, a, b, pol);
  if (!res.all_tails_converged()) throw NotIntegrable(std::move(res));
  return res;
}

/// Symmetric integral: alpha/(alpha+beta) * forward + beta/(alpha+beta) *
/// backward.  With beta = 0 this is exactly the forward integral and only
/// the forward tails are evaluated (and mirrored for alpha = 0).
inline IntegralResult symmetric_integral(const RealFunction& f, const StepParams& p, double a,
                                         double b, const SummationPolicy& pol = {}) {
  if (p.beta == 0.0) {
    IntegralResult res = forward_integral(f, p.alpha, a, b, pol);
    res.kind = IntegralKind::Symmetric;
    return res;
  }
  if (p.alpha == 0.0) {
    IntegralResult res = backward_integral(f, p.beta, a, b, pol);
    res.kind = IntegralKind::Symmetric;
    return res;
  }
  IntegralResult fwd = detail::forward_integral_partial(f, p.alpha, a, b, pol);
  IntegralResult bwd = detail::backward_integral_partial(f, p.beta, a, b, pol);
  IntegralResult res;
  res.kind = IntegralKind::Symmetric;
  const double wa = p.alpha / (p.alpha + p.beta);
  const double wb = p.beta / (p.alpha + p.beta);
  res.value = wa * fwd.value + wb * bwd.value;
  res.tails = std::move(fwd.tails);
  res.tails.insert(res.tails.end(), bwd.tails.begin(), bwd.tails.end());
  if (!res.all_tails_converged()) throw NotIntegrable(std::move(res));
  return res;
}

}  // namespace symcalc
