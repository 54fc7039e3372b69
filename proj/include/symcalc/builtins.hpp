#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "symcalc/core.hpp"
#include "symcalc/noerlund.hpp"

// Named built-in functions that the expression grammar cannot express.

namespace symcalc {

/// The dyadic indicator: 2^(-t) when t is a nonnegative integer (within
/// 1e-9 of one), 0 elsewhere.  The value at 0 is 1; the backward tails at
/// two bounds both contain it, so integrals from a to b are unaffected by
/// that choice.
inline RealFunction dyadic_indicator() {
  return RealFunction("dyadic", Interval::real_line(), [](double t) {
    const double r = std::round(t);
    if (r >= 0.0 && std::fabs(t - r) <= 1e-9) return std::exp2(-r);
    return 0.0;
  });
}

/// Cumulative of the dyadic indicator: t -> integral of the indicator from
/// 0 to t with unit symmetric steps.  Evaluation runs the series engine.
inline RealFunction dyadic_cumulative(const SummationPolicy& pol = {}) {
  return RealFunction("dyadic-cumulative", Interval::real_line(), [pol](double t) {
    return symmetric_integral(dyadic_indicator(), StepParams(1.0, 1.0), 0.0, t, pol).value;
  });
}

/// Looks up a built-in by its CLI name.
inline std::optional<RealFunction> find_builtin(std::string_view name,
                                                const SummationPolicy& pol = {}) {
  if (name == "dyadic") return dyadic_indicator();
  if (name == "dyadic-cumulative") return dyadic_cumulative(pol);
  return std::nullopt;
}

}  // namespace symcalc
