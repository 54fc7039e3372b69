#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "symcalc/errors.hpp"

// Convergence-controlled summation of infinite series.

namespace symcalc {

/// Kahan compensated accumulator (Neumaier variant); keeps the rounding
/// error of the running sum near one ulp regardless of term count, even
/// when a term cancels the sum outright.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double term) {
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      compensation += (sum - t) + term;  // low-order bits of term were lost
    else
      compensation += (term - t) + sum;  // low-order bits of sum were lost
    sum = t;
  }

  double value() const { return sum + compensation; }
};

/// Convergence control for infinite series tails.
///
/// A term counts as "small" when its magnitude is below
/// abs_tol + rel_tol * |partial sum| and, in addition, the geometric tail
/// estimate |term| * r / (1 - r) built from the last ratio r of consecutive
/// term magnitudes is below the same threshold.  Convergence is declared
/// after `consecutive_small` small terms in a row.  This is a heuristic: a
/// series whose terms decay slower than geometrically is summed until
/// max_terms and reported as not converged.
struct SummationPolicy {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  std::size_t max_terms = 10'000'000;
  std::size_t consecutive_small = 8;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw InvalidParams("summation tolerances must be positive");
    if (consecutive_small < 1 || max_terms < consecutive_small)
      throw InvalidParams("require max_terms >= consecutive_small >= 1");
  }
};

/// Outcome of summing one series tail.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  bool converged = false;
  double last_term_magnitude = 0.0;
};

/// Sums term(0) + term(1) + ... under the policy's convergence criterion.
/// A diverged sum carries the partial value with converged = false and
/// terms_used == max_terms.
template <typename TermFn>
SeriesResult sum_series(TermFn&& term, const SummationPolicy& pol) {
  pol.validate();
  KahanAccumulator acc;
  SeriesResult res;
  std::size_t small_run = 0;
  double prev_mag = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < pol.max_terms; ++k) {
    const double x = term(k);
    acc.add(x);
    const double mag = std::fabs(x);
    const double threshold = pol.abs_tol + pol.rel_tol * std::fabs(acc.value());
    bool small = false;
    if (mag == 0.0) {
      small = true;
    } else if (std::isfinite(x) && std::isfinite(acc.value()) && mag <= threshold &&
               mag < prev_mag) {
      const double r = mag / prev_mag;
      small = mag * r / (1.0 - r) <= threshold;  // geometric bound on the rest
    }
    small_run = small ? small_run + 1 : 0;
    prev_mag = mag;
    res.terms_used = k + 1;
    res.last_term_magnitude = mag;
    if (small_run >= pol.consecutive_small) {
      res.converged = true;
      break;
    }
  }
  res.value = acc.value();
  return res;
}

}  // namespace symcalc
