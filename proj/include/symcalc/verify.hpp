#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "symcalc/builtins.hpp"
#include "symcalc/core.hpp"
#include "symcalc/noerlund.hpp"

// Property-suite harness: certifies the symmetric-operator identities, the
// convex-combination decomposition, the zero-step reductions, and the
// fundamental-theorem counterexample over a fixed function corpus.

namespace symcalc::verify {

struct CorpusEntry {
  RealFunction fn;
  bool is_constant = false;
};

using Corpus = std::vector<CorpusEntry>;

/// Polynomials of degree 0 to 4, exp(-t), sin, 2^(-t), 1/(1+t^2) and the
/// dyadic indicator.
inline Corpus default_corpus() {
  Corpus c;
  c.push_back({RealFunction::from_source("7"), true});
  for (const char* src : {"2*t-1", "t^2", "t^3-2*t", "t^4-3*t^2+1", "exp(-t)", "sin(t)",
                          "2^(-t)", "1/(1+t^2)"})
    c.push_back({RealFunction::from_source(src), false});
  c.push_back({dyadic_indicator(), false});
  return c;
}

/// One property check over one function (pair) and one step setting.
/// `max_residual` is the largest per-sample residual in the units stated by
/// the property: scaled residual |lhs-rhs|/(1+|lhs|+|rhs|) for the identity
/// checks, ulps for the decomposition check, bit-mismatch count for the
/// reduction checks, absolute error for the counterexample values.
struct PropertyReport {
  std::string property;
  std::string functions;
  long samples = 0;
  long skipped = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  int samples_per_case = 100;
  std::vector<StepParams> step_params = {StepParams(1.0, 1.0), StepParams(1.0, 0.5),
                                         StepParams(0.3, 0.7), StepParams(0.25, 2.0)};
  SummationPolicy policy;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<PropertyReport> reports;
  bool all_pass = false;
};

/// Injection point for the operator under test; the default is the library
/// implementation.  Tests substitute a broken operator to exercise the
/// harness itself.
using SymmetricDiffFn = std::function<double(const RealFunction&, const StepParams&, double)>;

inline double library_symmetric_diff(const RealFunction& f, const StepParams& p, double t) {
  return symmetric_diff(f, p, t);
}

namespace detail {

inline Interval intersect(const Interval& x, const Interval& y) {
  return Interval(std::max(x.inf, y.inf), std::min(x.sup, y.sup));
}

inline RealFunction combine(std::string name, const RealFunction& f, const RealFunction& g,
                            std::function<double(double, double)> op) {
  return RealFunction(std::move(name), intersect(f.domain(), g.domain()),
                      [f, g, op = std::move(op)](double t) { return op(f(t), g(t)); });
}

inline RealFunction scale_fn(const RealFunction& f, double lambda) {
  return RealFunction("scaled", f.domain(), [f, lambda](double t) { return lambda * f(t); });
}

// Jittered sample points strictly inside the restricted domain, clipped to
// the default working range [-5, 5].
inline std::vector<double> sample_points(const Interval& dom, const StepParams& p, int count,
                                         std::mt19937_64& rng) {
  double lo = dom.has_finite_inf() ? dom.inf + p.beta : -5.0;
  double hi = dom.has_finite_sup() ? dom.sup - p.alpha : 5.0;
  lo = std::max(lo, -5.0);
  hi = std::min(hi, 5.0);
  std::vector<double> pts;
  if (!(lo < hi)) return pts;
  const double h = (hi - lo) / count;
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(lo + (i + 0.5 + jitter(rng)) * h);
  return pts;
}

inline std::string format_num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string case_label(const RealFunction& f, const RealFunction* g,
                              const StepParams& p) {
  std::string s = "f=" + f.name();
  if (g) s += ", g=" + g->name();
  s += ", alpha=" + format_num(p.alpha) + ", beta=" + format_num(p.beta);
  return s;
}

inline double scaled_residual(double lhs, double rhs) {
  return std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs) + std::fabs(rhs));
}

inline double ulp_of(double scale) {
  const double a = std::fabs(scale);
  return std::nextafter(a, kInf) - a;
}

inline constexpr double kIdentityTol = 1e-10;

}  // namespace detail

/// Checks the seven symmetric-operator identities over the corpus: constant
/// annihilation, additivity, homogeneity, both product rules and both
/// quotient rules.  Quotient samples where g(t+alpha)*g(t-beta) = 0 are
/// skipped and counted, per the rules' own proviso.
inline std::vector<PropertyReport> check_theorem1(
    const Corpus& corpus, const std::vector<StepParams>& params, int samples_per_case,
    std::uint64_t seed, const SymmetricDiffFn& dop = library_symmetric_diff) {
  std::vector<PropertyReport> reports;
  std::uint64_t case_id = 0;

  auto run_case = [&](const std::string& property, const RealFunction& f,
                      const RealFunction* g, const StepParams& p,
                      const std::function<bool(double, std::mt19937_64&, double&)>& sample) {
    PropertyReport rep;
    rep.property = property;
    rep.functions = detail::case_label(f, g, p);
    rep.tolerance = detail::kIdentityTol;
    std::seed_seq seq{seed, ++case_id};
    std::mt19937_64 rng(seq);
    const Interval dom = g ? detail::intersect(f.domain(), g->domain()) : f.domain();
    for (double t : detail::sample_points(dom, p, samples_per_case, rng)) {
      double residual = 0.0;
      bool used = false;
      try {
        used = sample(t, rng, residual);
      } catch (const DomainError&) {
      } catch (const DomainViolation&) {
      }
      if (used) {
        ++rep.samples;
        rep.max_residual = std::max(rep.max_residual, residual);
      } else {
        ++rep.skipped;
      }
    }
    rep.pass = rep.max_residual <= rep.tolerance;
    reports.push_back(std::move(rep));
  };

  for (const auto& p : params) {
    // 1: a constant function has vanishing symmetric difference, exactly.
    for (const auto& e : corpus) {
      if (!e.is_constant) continue;
      run_case("theorem1.1-constant", e.fn, nullptr, p,
               [&](double t, std::mt19937_64&, double& residual) {
                 residual = std::fabs(dop(e.fn, p, t));
                 return true;
               });
    }
    // 3: homogeneity, with a freshly drawn factor per sample.
    for (const auto& e : corpus) {
      run_case("theorem1.3-homogeneity", e.fn, nullptr, p,
               [&](double t, std::mt19937_64& rng, double& residual) {
                 std::uniform_real_distribution<double> lambdas(-3.0, 3.0);
                 const double lambda = lambdas(rng);
                 const double lhs = dop(detail::scale_fn(e.fn, lambda), p, t);
                 const double rhs = lambda * dop(e.fn, p, t);
                 residual = detail::scaled_residual(lhs, rhs);
                 return true;
               });
    }
    // 2: additivity over unordered pairs.
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (std::size_t j = i; j < corpus.size(); ++j) {
        const RealFunction& f = corpus[i].fn;
        const RealFunction& g = corpus[j].fn;
        const RealFunction sum =
            detail::combine("sum", f, g, [](double a, double b) { return a + b; });
        run_case("theorem1.2-additivity", f, &g, p,
                 [&](double t, std::mt19937_64&, double& residual) {
                   const double lhs = dop(sum, p, t);
                   const double rhs = dop(f, p, t) + dop(g, p, t);
                   residual = detail::scaled_residual(lhs, rhs);
                   return true;
                 });
      }
    }
    // 4-7: product and quotient rules over ordered pairs.
    for (const auto& ef : corpus) {
      for (const auto& eg : corpus) {
        const RealFunction& f = ef.fn;
        const RealFunction& g = eg.fn;
        const RealFunction prod =
            detail::combine("product", f, g, [](double a, double b) { return a * b; });
        const RealFunction quot =
            detail::combine("quotient", f, g, [](double a, double b) { return a / b; });
        run_case("theorem1.4-product-rule", f, &g, p,
                 [&](double t, std::mt19937_64&, double& residual) {
                   const double lhs = dop(prod, p, t);
                   const double rhs = dop(f, p, t) * g(t + p.alpha) + f(t - p.beta) * dop(g, p, t);
                   residual = detail::scaled_residual(lhs, rhs);
                   return true;
                 });
        run_case("theorem1.5-product-rule-swapped", f, &g, p,
                 [&](double t, std::mt19937_64&, double& residual) {
                   const double lhs = dop(prod, p, t);
                   const double rhs = dop(f, p, t) * g(t - p.beta) + f(t + p.alpha) * dop(g, p, t);
                   residual = detail::scaled_residual(lhs, rhs);
                   return true;
                 });
        run_case("theorem1.6-quotient-rule", f, &g, p,
                 [&](double t, std::mt19937_64&, double& residual) {
                   const double denom = g(t + p.alpha) * g(t - p.beta);
                   if (denom == 0.0) return false;  // the rule's proviso
                   const double lhs = dop(quot, p, t);
                   const double rhs =
                       (dop(f, p, t) * g(t - p.beta) - f(t - p.beta) * dop(g, p, t)) / denom;
                   residual = detail::scaled_residual(lhs, rhs);
                   return true;
                 });
        run_case("theorem1.7-quotient-rule-swapped", f, &g, p,
                 [&](double t, std::mt19937_64&, double& residual) {
                   const double denom = g(t + p.alpha) * g(t - p.beta);
                   if (denom == 0.0) return false;
                   const double lhs = dop(quot, p, t);
                   const double rhs =
                       (dop(f, p, t) * g(t + p.alpha) - f(t + p.alpha) * dop(g, p, t)) / denom;
                   residual = detail::scaled_residual(lhs, rhs);
                   return true;
                 });
      }
    }
  }
  return reports;
}

/// Checks the convex-combination decomposition (in ulps at the operand
/// scale) and the bit-exact zero-step reductions.
inline std::vector<PropertyReport> check_decomposition_and_reduction(
    const Corpus& corpus, const std::vector<StepParams>& params, int samples_per_case,
    std::uint64_t seed) {
  std::vector<PropertyReport> reports;
  std::uint64_t case_id = 1u << 20;  // disjoint from the theorem-1 stream
  std::set<std::pair<double, std::string>> seen_alphas, seen_betas;

  for (const auto& p : params) {
    for (const auto& e : corpus) {
      const RealFunction& f = e.fn;
      // convex combination: D = wa*forward + wb*backward for positive steps
      if (p.alpha > 0.0 && p.beta > 0.0) {
        PropertyReport rep;
        rep.property = "decomposition-convex-combination";
        rep.functions = detail::case_label(f, nullptr, p);
        rep.tolerance = 4.0;  // ulps
        std::seed_seq seq{seed, ++case_id};
        std::mt19937_64 rng(seq);
        const double wa = p.alpha / (p.alpha + p.beta);
        const double wb = p.beta / (p.alpha + p.beta);
        for (double t : detail::sample_points(f.domain(), p, samples_per_case, rng)) {
          const double fwd = forward_diff(f, p.alpha, t);
          const double bwd = backward_diff(f, p.beta, t);
          const double lhs = symmetric_diff(f, p, t);
          const double rhs = wa * fwd + wb * bwd;
          const double err = std::fabs(lhs - rhs);
          const double scale =
              std::max(std::fabs(lhs), std::fabs(wa * fwd) + std::fabs(wb * bwd));
          const double in_ulps = err == 0.0 ? 0.0 : err / detail::ulp_of(scale);
          ++rep.samples;
          rep.max_residual = std::max(rep.max_residual, in_ulps);
        }
        rep.pass = rep.max_residual <= rep.tolerance;
        reports.push_back(std::move(rep));
      }
      // zero-step reductions must be bit-for-bit; one case per distinct step
      auto reduction = [&](const char* property, const StepParams& zp, bool forward) {
        PropertyReport rep;
        rep.property = property;
        rep.functions = detail::case_label(f, nullptr, zp);
        rep.tolerance = 0.0;  // exact
        std::seed_seq seq{seed, ++case_id};
        std::mt19937_64 rng(seq);
        for (double t : detail::sample_points(f.domain(), zp, samples_per_case, rng)) {
          const double sym = symmetric_diff(f, zp, t);
          const double ref = forward ? forward_diff(f, zp.alpha, t) : backward_diff(f, zp.beta, t);
          ++rep.samples;
          if (!(sym == ref) || std::signbit(sym) != std::signbit(ref))
            rep.max_residual = std::max(rep.max_residual, 1.0);
        }
        rep.pass = rep.max_residual <= rep.tolerance;
        reports.push_back(std::move(rep));
      };
      if (p.alpha > 0.0 && seen_alphas.insert({p.alpha, f.name()}).second)
        reduction("reduction-beta-zero", StepParams(p.alpha, 0.0), true);
      if (p.beta > 0.0 && seen_betas.insert({p.beta, f.name()}).second)
        reduction("reduction-alpha-zero", StepParams(0.0, p.beta), false);
    }
  }
  return reports;
}

/// Checks the fundamental-theorem counterexample: the cumulative symmetric
/// integral of the dyadic indicator has the closed forms
/// (3/2)(1 - 2^-t) and, for its symmetric difference, 9 * 2^-(t+3), and the
/// latter stays well away from the integrand.
inline PropertyReport check_ftc_counterexample(const SummationPolicy& pol = {}) {
  PropertyReport rep;
  rep.property = "ftc-counterexample";
  rep.functions = "f=dyadic, alpha=1, beta=1";
  rep.tolerance = 1e-12;  // absolute error on the closed-form values
  const RealFunction dyadic = dyadic_indicator();
  const RealFunction cumulative = dyadic_cumulative(pol);
  const StepParams unit(1.0, 1.0);
  for (int t = 1; t <= 10; ++t) {
    const double integral = symmetric_integral(dyadic, unit, 0.0, t, pol).value;
    const double integral_expected = 1.5 * (1.0 - std::exp2(-t));
    const double derivative = symmetric_diff(cumulative, unit, t);
    const double derivative_expected = 9.0 * std::exp2(-(t + 3.0));
    ++rep.samples;
    rep.max_residual = std::max({rep.max_residual, std::fabs(integral - integral_expected),
                                 std::fabs(derivative - derivative_expected)});
    if (t == 1 && !(std::fabs(derivative - std::exp2(-1.0)) > 1e-3))
      rep.max_residual = kInf;  // derivative must differ from the integrand
  }
  rep.pass = rep.max_residual <= rep.tolerance;
  return rep;
}

enum class SuiteSelection { All, Theorem1, Reductions, Ftc };

/// Runs the selected checks over `corpus` and merges the reports
/// deterministically (ordered by property id, then case label).  An empty
/// corpus yields an empty, passing report.
inline SuiteReport run_suite(const Corpus& corpus, const SuiteConfig& cfg = {},
                             SuiteSelection which = SuiteSelection::All,
                             const SymmetricDiffFn& dop = library_symmetric_diff) {
  SuiteReport out;
  out.seed = cfg.seed;
  if (corpus.empty()) {
    out.all_pass = true;
    return out;
  }
  if (which == SuiteSelection::All || which == SuiteSelection::Theorem1) {
    auto r = check_theorem1(corpus, cfg.step_params, cfg.samples_per_case, cfg.seed, dop);
    out.reports.insert(out.reports.end(), r.begin(), r.end());
  }
  if (which == SuiteSelection::All || which == SuiteSelection::Reductions) {
    auto r = check_decomposition_and_reduction(corpus, cfg.step_params, cfg.samples_per_case,
                                               cfg.seed);
    out.reports.insert(out.reports.end(), r.begin(), r.end());
  }
  if (which == SuiteSelection::All || which == SuiteSelection::Ftc) {
    out.reports.push_back(check_ftc_counterexample(cfg.policy));
  }
  if (which == SuiteSelection::All || which == SuiteSelection::Theorem1) {
    // coverage: every identity must have produced at least one report
    for (int i = 1; i <= 7; ++i) {
      const std::string prefix = "theorem1." + std::to_string(i);
      const bool seen = std::any_of(out.reports.begin(), out.reports.end(),
                                    [&](const PropertyReport& r) {
                                      return r.property.compare(0, prefix.size(), prefix) == 0;
                                    });
      if (!seen) {
        PropertyReport missing;
        missing.property = prefix + "-missing";
        missing.functions = "(coverage)";
        missing.pass = false;
        missing.max_residual = kInf;
        out.reports.push_back(std::move(missing));
      }
    }
  }
  std::sort(out.reports.begin(), out.reports.end(),
            [](const PropertyReport& x, const PropertyReport& y) {
              return std::tie(x.property, x.functions) < std::tie(y.property, y.functions);
            });
  out.all_pass = std::all_of(out.reports.begin(), out.reports.end(),
                             [](const PropertyReport& r) { return r.pass; });
  return out;
}

/// Convenience overload over the default corpus.
inline SuiteReport run_suite(const SuiteConfig& cfg = {},
                             SuiteSelection which = SuiteSelection::All,
                             const SymmetricDiffFn& dop = library_symmetric_diff) {
  return run_suite(default_corpus(), cfg, which, dop);
}

}  // namespace symcalc::verify
