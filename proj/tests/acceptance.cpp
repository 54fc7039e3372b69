// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line.  The process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "symcalc/symcalc.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int index, const char* title, bool pass, const std::string& detail) {
  std::printf("[%d] %-34s %s  (%s)\n", index, title, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- 1: the fundamental-theorem counterexample, pinned to closed forms ----

void criterion1() {
  const auto start = Clock::now();
  const symcalc::SummationPolicy pol;
  const symcalc::RealFunction dyadic = symcalc::dyadic_indicator();
  const symcalc::RealFunction cumulative = symcalc::dyadic_cumulative(pol);
  const symcalc::StepParams unit(1.0, 1.0);
  double max_err = 0.0;
  for (int t = 1; t <= 10; ++t) {
    const double integral = symcalc::symmetric_integral(dyadic, unit, 0.0, t, pol).value;
    const double derivative = symcalc::symmetric_diff(cumulative, unit, t);
    max_err = std::max(max_err, std::fabs(integral - 1.5 * (1.0 - std::exp2(-t))));
    max_err = std::max(max_err, std::fabs(derivative - 9.0 * std::exp2(-(t + 3.0))));
  }
  const double elapsed = seconds_since(start);
  const bool pass = max_err <= 1e-12 && elapsed < 1.0;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "max err %.2e <= 1e-12, %.2fs < 1s", max_err,
                elapsed);
  report(1, "FTC counterexample regression", pass, detail);
}

// --- 2: all seven operator identities over the full corpus ----------------

void criterion2() {
  const auto start = Clock::now();
  const symcalc::verify::SuiteConfig cfg;  // 100 samples, tolerance 1e-10 scaled
  const auto reports = symcalc::verify::check_theorem1(
      symcalc::verify::default_corpus(), cfg.step_params, cfg.samples_per_case, cfg.seed);
  long failed = 0;
  bool covered[8] = {};
  long sampled_cases = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failed;
    if (r.samples >= cfg.samples_per_case) ++sampled_cases;
    if (r.property.rfind("theorem1.", 0) == 0) covered[r.property[9] - '0'] = true;
  }
  bool all_covered = true;
  for (int i = 1; i <= 7; ++i) all_covered = all_covered && covered[i];
  const double elapsed = seconds_since(start);
  const bool pass = failed == 0 && all_covered && sampled_cases > 0 && elapsed < 10.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu reports, %ld failing, 7/7 properties%s, %.2fs < 10s", reports.size(),
                failed, all_covered ? "" : " NOT covered", elapsed);
  report(2, "Theorem 1 identity suite", pass, detail);
}

// --- 3: convex decomposition within 4 ulp; zero-step reductions exact -----

void criterion3() {
  const symcalc::verify::SuiteConfig cfg;
  const auto reports = symcalc::verify::check_decomposition_and_reduction(
      symcalc::verify::default_corpus(), cfg.step_params, 100, cfg.seed);
  long failed = 0;
  double worst_ulps = 0.0;
  bool reductions_exact = true;
  for (const auto& r : reports) {
    if (!r.pass) ++failed;
    if (r.property == "decomposition-convex-combination")
      worst_ulps = std::max(worst_ulps, r.max_residual);
    else if (r.max_residual != 0.0)
      reductions_exact = false;
  }
  const bool pass = failed == 0 && reductions_exact;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "worst %.2f ulp <= 4, reductions %s", worst_ulps,
                reductions_exact ? "bit-exact" : "NOT bit-exact");
  report(3, "Decomposition and reductions", pass, detail);
}

// --- 4: series oracle against the geometric closed form -------------------

void criterion4() {
  const symcalc::SummationPolicy pol;
  bool pass = true;
  double worst_ratio = 0.0;
  for (double q : {0.3, 0.5, 0.9}) {
    for (double alpha : {0.25, 1.0, 2.0}) {
      const symcalc::RealFunction f("q^t", symcalc::Interval::real_line(),
                                    [q](double t) { return std::pow(q, t); });
      const symcalc::RealFunction mirrored("q^-t", symcalc::Interval::real_line(),
                                           [q](double t) { return std::pow(q, -t); });
      for (double x : {0.0, 0.7}) {
        const auto fwd = symcalc::forward_tail_sum(f, alpha, x, pol);
        const double closed = alpha * std::pow(q, x) / (1.0 - std::pow(q, alpha));
        const double tol = pol.abs_tol + pol.rel_tol * std::fabs(closed);
        pass = pass && fwd.converged && std::fabs(fwd.value - closed) <= tol;
        worst_ratio = std::max(worst_ratio, std::fabs(fwd.value - closed) / tol);
        // the backward tail of q^-t mirrors the forward tail of q^t
        const auto bwd = symcalc::backward_tail_sum(mirrored, alpha, -x, pol);
        pass = pass && bwd.converged && std::fabs(bwd.value - closed) <= tol;
        worst_ratio = std::max(worst_ratio, std::fabs(bwd.value - closed) / tol);
      }
    }
  }
  bool constant_rejected = false;
  try {
    const symcalc::RealFunction one("1", symcalc::Interval::real_line(),
                                    [](double) { return 1.0; });
    symcalc::forward_integral(one, 1.0, 0.0, 1.0, pol);
  } catch (const symcalc::NotIntegrable&) {
    constant_rejected = true;
  }
  pass = pass && constant_rejected;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "9 (q,alpha) combos, worst %.2fx tolerance, "
                "constant %s", worst_ratio,
                constant_rejected ? "NotIntegrable" : "ACCEPTED");
  report(4, "Series oracle", pass, detail);
}

// --- 5: every MVT witness re-verifies through core ------------------------

void criterion5() {
  const auto start = Clock::now();
  using symcalc::RealFunction;
  using symcalc::StepParams;
  using symcalc::Witness;
  const auto fn = [](const char* src) { return RealFunction::from_source(src); };
  const double pi = std::acos(-1.0);

  struct Case {
    RealFunction f;
    double a, b;
    enum { Rolle, Lagrange } kind;
  };
  const std::vector<Case> corpus = {
      {fn("t*(1-t)"), 0.0, 1.0, Case::Rolle},
      {RealFunction::from_source("sin(w*t)", symcalc::Interval::real_line(),
                                 {{"w", 2.0 * pi}}),
       0.0, 1.0, Case::Rolle},
      {fn("(t-0.3)^2*(1.2-t)"), -0.5, 1.1, Case::Lagrange},
      {fn("t^2"), 0.0, 1.0, Case::Lagrange},
      {fn("t^3-2*t"), -1.5, 2.0, Case::Lagrange},
      {fn("t^4-3*t^2+1"), -0.5, 1.8, Case::Lagrange},
      {fn("2*t-1"), -1.0, 2.0, Case::Lagrange},
      {fn("exp(-t)"), 0.0, 1.5, Case::Lagrange},
      {fn("sin(t)"), 0.0, 1.0, Case::Lagrange},
      {fn("2^(-t)"), 0.0, 2.0, Case::Lagrange},
  };

  bool pass = true;
  double worst = 0.0;
  std::string failure;
  for (const auto& c : corpus) {
    try {
      const Witness w = c.kind == Case::Rolle ? symcalc::rolle_witness(c.f, c.a, c.b)
                                              : symcalc::lagrange_witness(c.f, c.a, c.b);
      const bool contained =
          w.alpha > 0.0 && w.beta > 0.0 && w.c - w.beta >= c.a && w.c + w.alpha <= c.b;
      const double slope =
          c.kind == Case::Rolle ? 0.0 : (c.f(c.b) - c.f(c.a)) / (c.b - c.a);
      const double residual = std::fabs(
          symcalc::symmetric_diff(c.f, StepParams(w.alpha, w.beta), w.c) - slope);
      worst = std::max(worst, residual);
      if (!contained || residual > 2e-9) {
        pass = false;
        failure = c.f.name();
      }
    } catch (const symcalc::Error& e) {
      pass = false;
      failure = c.f.name() + std::string(": ") + e.what();
    }
  }

  // two Cauchy instances, re-verified through two independent diffs
  for (const char* gsrc : {"t", "cos(t)"}) {
    const RealFunction f = fn("sin(t)");
    const RealFunction g = fn(gsrc);
    try {
      const Witness w = symcalc::cauchy_witness(f, g, 0.0, 1.0);
      const StepParams p(w.alpha, w.beta);
      const double ratio = (f(1.0) - f(0.0)) / (g(1.0) - g(0.0));
      const double residual = std::fabs(
          symcalc::symmetric_diff(f, p, w.c) / symcalc::symmetric_diff(g, p, w.c) - ratio);
      worst = std::max(worst, residual);
      const bool contained =
          w.alpha > 0.0 && w.beta > 0.0 && w.c - w.beta >= 0.0 && w.c + w.alpha <= 1.0;
      if (!contained || residual > 2e-9) {
        pass = false;
        failure = std::string("cauchy g=") + gsrc;
      }
    } catch (const symcalc::Error& e) {
      pass = false;
      failure = std::string("cauchy g=") + gsrc + ": " + e.what();
    }
  }

  // designated errors for precondition-violating inputs
  bool errors_ok = false;
  try {
    symcalc::rolle_witness(fn("t"), 0.0, 1.0);
  } catch (const symcalc::PreconditionViolated&) {
    try {
      symcalc::cauchy_witness(fn("t^2"), fn("t*(1-t)"), 0.0, 1.0);
    } catch (const symcalc::PreconditionViolated&) {
      try {
        symcalc::find_interior_extremum(fn("7"), 0.0, 1.0);
      } catch (const symcalc::ConstantFunction&) {
        errors_ok = true;
      }
    }
  }
  pass = pass && errors_ok;

  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 5.0;
  char detail[192];
  if (failure.empty())
    std::snprintf(detail, sizeof(detail),
                  "12 witnesses, worst residual %.2e <= 2e-9, errors %s, %.2fs < 5s", worst,
                  errors_ok ? "designated" : "WRONG", elapsed);
  else
    std::snprintf(detail, sizeof(detail), "failed at %s (worst %.2e, %.2fs)",
                  failure.c_str(), worst, elapsed);
  report(5, "MVT witness re-verification", pass, detail);
}

// --- 6: classical second-order limit of the h-symmetric stencil -----------

void criterion6() {
  const symcalc::RealFunction f = symcalc::RealFunction::from_source("exp(t)");
  const double exact = std::exp(1.0);
  const double e1 =
      std::fabs(symcalc::symmetric_diff(f, symcalc::StepParams(1e-2, 1e-2), 1.0) - exact);
  const double e2 =
      std::fabs(symcalc::symmetric_diff(f, symcalc::StepParams(5e-3, 5e-3), 1.0) - exact);
  const double factor = e1 / e2;
  const bool pass = factor >= 3.5 && factor <= 4.5;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "error ratio %.3f in [3.5, 4.5]", factor);
  report(6, "Classical-limit order check", pass, detail);
}

// --- 7: parser robustness under fuzzing, grammar round-trip ---------------

void criterion7() {
  std::mt19937_64 rng(0x5eed);
  const std::string charset = "0123456789.+-*/^() t aexplnsicobqrtmu,_$#;=[]{}\\\"'\n\x01";
  std::uniform_int_distribution<std::size_t> len(0, 1024);
  std::uniform_int_distribution<std::size_t> pick(0, charset.size() - 1);
  std::uniform_int_distribution<int> raw_byte(1, 255);
  std::uniform_int_distribution<int> mode(0, 3);
  long parsed = 0, rejected = 0;
  bool positioned = true;
  for (int i = 0; i < 10000; ++i) {
    std::string src;
    const std::size_t n = len(rng);
    if (mode(rng) == 0) {
      for (std::size_t k = 0; k < n; ++k)
        src += static_cast<char>(raw_byte(rng));  // arbitrary bytes
    } else {
      for (std::size_t k = 0; k < n; ++k) src += charset[pick(rng)];
    }
    try {
      const symcalc::ExprPtr e = symcalc::parse(src);
      ++parsed;
      if (!symcalc::equal(*e, *symcalc::parse(symcalc::to_string(*e)))) positioned = false;
    } catch (const symcalc::ParseError& err) {
      ++rejected;
      if (err.offset() > src.size()) positioned = false;
      if (std::string(err.what()).rfind("syntax error at byte", 0) != 0) positioned = false;
    }
  }

  // round-trip over the documented grammar corpus
  bool round_trip = true;
  for (const char* src :
       {"7", "2*t-1", "t^2", "t^3-2*t", "t^4-3*t^2+1", "exp(-t)", "sin(t)", "2^(-t)",
        "2^-t", "1/(1+t^2)", "t^2 + 3*t", "min(t, 2)*max(t, -1)", "-(t+1)^2",
        "sqrt(abs(t))", "pow2(t+1)", "a*t+b", "1.5e2*t", "t*(1-t)", "exp(-(t^2)/2)",
        "cos(t)/(2+sin(t))"}) {
    const symcalc::ExprPtr e = symcalc::parse(src);
    if (!symcalc::equal(*e, *symcalc::parse(symcalc::to_string(*e)))) round_trip = false;
  }

  const bool pass = parsed + rejected == 10000 && positioned && round_trip;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "10000 inputs (%ld ASTs, %ld positioned errors), round-trip %s", parsed,
                rejected, round_trip ? "stable" : "BROKEN");
  report(7, "Parser robustness", pass, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (g_failures == 0)
    std::printf("acceptance: all 7 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures;
}
