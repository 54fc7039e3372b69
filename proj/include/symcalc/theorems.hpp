#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symcalc/core.hpp"

// Constructive mean value theorems: each existence proof (Fermat, Rolle,
// Lagrange, Cauchy) is turned into a deterministic search that returns an
// explicit witness (alpha, beta, c) with its achieved residual.

namespace symcalc {

/// Knobs of the witness searches.
struct SearchConfig {
  int grid_n = 4096;            // initial sampling resolution
  int refine_iters = 80;        // golden-section / bisection iterations
  double tol = 1e-9;            // residual target and equality tolerance
  double initial_step_fraction = 1.0 / 16.0;  // alpha1 = beta1 = (b-a)/16

  void validate() const {
    if (grid_n < 3) throw InvalidParams("grid_n must be at least 3");
    if (!(tol > 0.0)) throw InvalidParams("tol must be positive");
    if (refine_iters < 1) throw InvalidParams("refine_iters must be positive");
    if (!(initial_step_fraction > 0.0) || !(initial_step_fraction < 1.0))
      throw InvalidParams("initial_step_fraction must lie in (0,1)");
  }
};

enum class ExtremumKind { Max, Min };

struct GridExtremum {
  double t0;
  ExtremumKind kind;
};

/// A mean-value-theorem witness: steps, the point c, and the magnitude of
/// the defining constraint achieved there (zero derivative, slope match or
/// ratio match).  The stencil stays inside [a,b]: c - beta >= a and
/// c + alpha <= b.
struct Witness {
  double alpha;
  double beta;
  double c;
  double residual;
};

/// Cauchy search found a witness at which the denominator derivative is
/// numerically zero; carries the witness for inspection.
class DegenerateWitness : public Error {
 public:
  explicit DegenerateWitness(Witness w)
      : Error("denominator derivative vanishes at the witness"), witness_(w) {}

  const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

namespace detail {

// Golden-section refinement of a bracketed extremum.  `sign` is +1 to
// maximize, -1 to minimize.
inline double golden_refine(const RealFunction& f, double lo, double hi, double sign,
                            int iters) {
  constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = sign * f(x1);
  double f2 = sign * f(x2);
  for (int i = 0; i < iters && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                                               (std::fabs(lo) + std::fabs(hi) + 1.0);
       ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = sign * f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = sign * f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

// Grid scan for an interior extremum.  Prefers grid points that are local
// extrema with respect to their neighbours; a monotone function (possible
// only outside the Rolle setting) falls back to the most deviating interior
// point.  `forced` restricts the scan to one extremum kind.
inline GridExtremum locate_extremum(const RealFunction& f, double a, double b,
                                    const SearchConfig& cfg,
                                    std::optional<ExtremumKind> forced) {
  cfg.validate();
  if (!(a < b)) throw InvalidParams("extremum search requires a < b");
  const int n = cfg.grid_n;
  std::vector<double> ts(n), vs(n);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    ts[i] = (i == n - 1) ? b : a + i * h;
    vs[i] = f(ts[i]);
  }
  double vmin = vs[0], vmax = vs[0];
  for (double v : vs) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (vmax - vmin <= cfg.tol * (1.0 + std::fabs(vs[0])))
    throw ConstantFunction("all sampled values agree within tolerance");

  int best_max = -1, best_min = -1;
  for (int i = 1; i + 1 < n; ++i) {
    if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && (best_max < 0 || vs[i] > vs[best_max]))
      best_max = i;
    if (vs[i] <= vs[i - 1] && vs[i] <= vs[i + 1] && (best_min < 0 || vs[i] < vs[best_min]))
      best_min = i;
  }
  if (forced) {
    if (*forced == ExtremumKind::Max) best_min = -1;
    else best_max = -1;
  }
  if (best_max < 0 && best_min < 0) {
    // monotone on the grid: take the most deviating interior point
    int imax = 1, imin = 1;
    for (int i = 1; i + 1 < n; ++i) {
      if (vs[i] > vs[imax]) imax = i;
      if (vs[i] < vs[imin]) imin = i;
    }
    const double ref = 0.5 * (vs[0] + vs[n - 1]);
    const bool use_max = forced ? (*forced == ExtremumKind::Max) : (vs[imax] - ref >= ref - vs[imin]);
    best_max = use_max ? imax : -1;
    best_min = use_max ? -1 : imin;
  }

  ExtremumKind kind;
  int i;
  if (best_max >= 0 && best_min >= 0) {
    const double ref = 0.5 * (vs[0] + vs[n - 1]);
    kind = (vs[best_max] - ref >= ref - vs[best_min]) ? ExtremumKind::Max : ExtremumKind::Min;
    i = kind == ExtremumKind::Max ? best_max : best_min;
  } else if (best_max >= 0) {
    kind = ExtremumKind::Max;
    i = best_max;
  } else {
    kind = ExtremumKind::Min;
    i = best_min;
  }
  const double sign = kind == ExtremumKind::Max ? 1.0 : -1.0;
  const double t0 = golden_refine(f, ts[i - 1], ts[i + 1], sign, cfg.refine_iters);
  return {t0, kind};
}

}  // namespace detail

/// Locates an interior extremum of f on [a,b] by grid scan plus
/// golden-section refinement.  Throws ConstantFunction when all grid values
/// agree within tolerance.
inline GridExtremum find_interior_extremum(const RealFunction& f, double a, double b,
                                           const SearchConfig& cfg = {}) {
  return detail::locate_extremum(f, a, b, cfg, std::nullopt);
}

/// Witness for the stationary-point theorem at a known local extremizer t0
/// strictly inside ]a,b[: finds positive steps with a vanishing symmetric
/// difference at t0.
///
/// Mirrors the existence proof.  Initial steps alpha1 = beta1 shrink
/// geometrically until f(t0 +- step) lies on the extremum side of f(t0);
/// an exact-enough tie returns immediately; otherwise gamma is the common
/// step and rho in (0,gamma) is bisected on the stencil endpoint equation.
inline Witness fermat_witness(const RealFunction& f, double a, double b, double t0,
                              ExtremumKind kind, const SearchConfig& cfg = {}) {
  cfg.validate();
  if (!(a < t0 && t0 < b))
    throw PreconditionViolated("t0 must lie strictly inside ]a,b[");
  const double sign = kind == ExtremumKind::Max ? 1.0 : -1.0;
  const auto phi = [&](double t) { return sign * f(t); };

  const double phi0 = phi(t0);
  const double tol_eq = cfg.tol * (1.0 + std::fabs(f(t0)));

  // Step shrinking: both probes must not exceed the extremum value.  A step
  // the stencil cannot resolve (t0 +- step rounds back to t0) would fake a
  // zero difference, so it ends the search instead.
  double step = std::min({(b - a) * cfg.initial_step_fraction, b - t0, t0 - a}) *
                (1.0 - 1e-9);
  bool admissible = false;
  for (int shrink = 0; shrink <= 60; ++shrink) {
    if (!(t0 + step > t0) || !(t0 - step < t0)) break;
    if (phi(t0 + step) <= phi0 && phi(t0 - step) <= phi0) {
      admissible = true;
      break;
    }
    step *= 0.5;
  }
  if (!admissible)
    throw SearchFailed("no admissible step: t0 does not behave like a local extremizer");

  const double d = f(t0 + step) - f(t0 - step);
  if (std::fabs(d) <= tol_eq) {
    const double residual = std::fabs(d) / (2.0 * step);
    if (residual <= cfg.tol) return {step, step, t0, residual};
  }

  // Orientation: bisect on the side whose probe sits strictly above the
  // other, exactly as the proof's case split.
  const double gamma = step;
  const bool minus_above = phi(t0 - gamma) > phi(t0 + gamma);
  // root equation g(r) = phi(t0 + r) - phi(t0 - gamma) for the minus-above
  // case; the mirror swaps probe directions.
  const auto probe = [&](double r) {
    return minus_above ? phi(t0 + r) - phi(t0 - gamma) : phi(t0 - r) - phi(t0 + gamma);
  };
  double lo = 0.0, hi = gamma;
  double g_lo = probe(lo);
  const double g_hi = probe(hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0))
    throw SearchFailed("bisection bracket invalid at the located extremizer");

  double best_r = 0.0;
  double best_res = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.refine_iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // bracket at one ulp
    const double gm = probe(mid);
    const double res = std::fabs(gm) / (mid + gamma);
    if (res < best_res) {
      best_res = res;
      best_r = mid;
    }
    if (gm == 0.0) break;
    if ((gm > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = gm;
    } else {
      hi = mid;
    }
  }
  if (!(best_res <= cfg.tol))
    throw SearchFailed("bisection did not reach the residual tolerance");
  if (minus_above) return {best_r, gamma, t0, best_res};
  return {gamma, best_r, t0, best_res};
}

/// Rolle witness: requires f(a) = f(b) within tolerance; returns a point
/// and steps with a vanishing symmetric difference.  A function constant on
/// the sample grid yields the trivial midpoint witness.
inline Witness rolle_witness(const RealFunction& f, double a, double b,
                             const SearchConfig& cfg = {}) {
  cfg.validate();
  if (!(a < b)) throw InvalidParams("rolle_witness requires a < b");
  const double fa = f(a);
  if (std::fabs(fa - f(b)) > cfg.tol * (1.0 + std::fabs(fa)))
    throw PreconditionViolated("f(a) and f(b) differ beyond tolerance");
  GridExtremum ext;
  try {
    ext = find_interior_extremum(f, a, b, cfg);
  } catch (const ConstantFunction&) {
    const double c = 0.5 * (a + b);
    const double step =
        std::min({(b - a) * cfg.initial_step_fraction, b - c, c - a}) * (1.0 - 1e-9);
    const double residual = std::fabs(f(c + step) - f(c - step)) / (2.0 * step);
    return {step, step, c, residual};
  }
  try {
    return fermat_witness(f, a, b, ext.t0, ext.kind, cfg);
  } catch (const SearchFailed&) {
    // fall back to the opposite extremum kind before giving up
    const ExtremumKind other =
        ext.kind == ExtremumKind::Max ? ExtremumKind::Min : ExtremumKind::Max;
    const GridExtremum alt = detail::locate_extremum(f, a, b, cfg, other);
    return fermat_witness(f, a, b, alt.t0, alt.kind, cfg);
  }
}

/// Lagrange witness: steps and point where the symmetric difference of f
/// matches the secant slope (f(b)-f(a))/(b-a).
inline Witness lagrange_witness(const RealFunction& f, double a, double b,
                                const SearchConfig& cfg = {}) {
  cfg.validate();
  if (!(a < b)) throw InvalidParams("lagrange_witness requires a < b");
  const double fa = f(a);
  const double slope = (f(b) - fa) / (b - a);
  // the proof's auxiliary function, vanishing at both ends
  const RealFunction aux("lagrange-aux", f.domain(), [f, fa, slope, a](double t) {
    return fa - f(t) + (t - a) * slope;
  });
  const Witness w = rolle_witness(aux, a, b, cfg);
  const double check = symmetric_diff(f, StepParams(w.alpha, w.beta), w.c) - slope;
  return {w.alpha, w.beta, w.c, std::fabs(check)};
}

/// Cauchy witness: steps and point where the ratio of symmetric differences
/// of f and g matches (f(b)-f(a))/(g(b)-g(a)).  Requires g(b) != g(a); a
/// witness with a vanishing denominator derivative raises DegenerateWitness.
inline Witness cauchy_witness(const RealFunction& f, const RealFunction& g, double a, double b,
                              const SearchConfig& cfg = {}) {
  cfg.validate();
  if (!(a < b)) throw InvalidParams("cauchy_witness requires a < b");
  const double fa = f(a), ga = g(a);
  const double gb = g(b);
  if (std::fabs(gb - ga) <= cfg.tol * (1.0 + std::fabs(ga)))
    throw PreconditionViolated("g(a) and g(b) must differ");
  const double ratio = (f(b) - fa) / (gb - ga);
  const RealFunction aux("cauchy-aux", f.domain(), [f, g, fa, ga, ratio](double t) {
    return f(t) - fa - ratio * (g(t) - ga);
  });
  // Tighter inner tolerance: the ratio residual divides by D[g](c), so the
  // zero of the auxiliary function is driven well below cfg.tol first.
  SearchConfig inner = cfg;
  inner.tol = std::max(cfg.tol * 1e-5, 1e-14);
  Witness w;
  try {
    w = rolle_witness(aux, a, b, inner);
  } catch (const SearchFailed&) {
    w = rolle_witness(aux, a, b, cfg);
  }
  const StepParams steps(w.alpha, w.beta);
  const double dg = symmetric_diff(g, steps, w.c);
  if (std::fabs(dg) <= cfg.tol) throw DegenerateWitness(w);
  const double df = symmetric_diff(f, steps, w.c);
  const double residual = std::fabs(df / dg - ratio);
  if (!(residual <= cfg.tol))
    throw SearchFailed("ratio residual above tolerance at the located witness");
  return {w.alpha, w.beta, w.c, residual};
}

}  // namespace symcalc
