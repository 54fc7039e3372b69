// symcalc: command-line front end for the alpha,beta-symmetric quantum
// calculus library.  Subcommands: diff, integrate, mvt, verify.
//
// Exit codes: 0 success, 2 usage/parse error, 3 domain violation,
// 4 not integrable, 5 precondition violation, 6 search failure,
// 1 other failure (including a failing verify suite).

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symcalc/symcalc.hpp"

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

enum class Format { Table, Csv, Json };

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  return Format::Table;
}

// 17 significant digits: enough to round-trip any double, per the
// documented CSV contract.
std::string fmt17(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

// 6 significant digits for human tables.
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// CSV field with RFC-4180 quoting when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void print_record(const json& record, Format format,
                  const std::function<void()>& table,
                  const std::function<void()>& csv) {
  switch (format) {
    case Format::Json:
      std::cout << record.dump(2) << "\n";
      break;
    case Format::Csv:
      csv();
      break;
    case Format::Table:
      table();
      break;
  }
}

// Default summation policy with the SYMCALC_MAX_TERMS override applied.
symcalc::SummationPolicy base_policy() {
  symcalc::SummationPolicy pol;
  if (const char* env = std::getenv("SYMCALC_MAX_TERMS")) {
    const std::string text(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
      throw symcalc::InvalidParams("SYMCALC_MAX_TERMS must be a positive integer, got '" +
                                   text + "'");
    pol.max_terms = value;
  }
  return pol;
}

symcalc::ParamMap parse_params(const std::vector<std::string>& bindings) {
  symcalc::ParamMap params;
  for (const auto& b : bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0)
      throw symcalc::InvalidParams("--param expects name=value, got '" + b + "'");
    const std::string name = b.substr(0, eq);
    const std::string text = b.substr(eq + 1);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
      throw symcalc::InvalidParams("--param value for '" + name + "' is not a number: '" +
                                   text + "'");
    params[name] = value;
  }
  return params;
}

symcalc::RealFunction resolve_function(const std::string& expr, const std::string& builtin,
                                       const symcalc::SummationPolicy& pol,
                                       const symcalc::ParamMap& params) {
  if (!builtin.empty()) {
    auto f = symcalc::find_builtin(builtin, pol);
    if (!f)
      throw symcalc::InvalidParams("unknown builtin '" + builtin +
                                   "' (available: dyadic, dyadic-cumulative)");
    return *f;
  }
  if (expr.empty())
    throw symcalc::InvalidParams("one of -f/--function or --builtin is required");
  return symcalc::RealFunction::from_source(expr, symcalc::Interval::real_line(), params);
}

json policy_json(const symcalc::SummationPolicy& pol) {
  return json{{"abs_tol", pol.abs_tol},
              {"rel_tol", pol.rel_tol},
              {"max_terms", pol.max_terms},
              {"consecutive_small", pol.consecutive_small}};
}

json tail_json(const symcalc::SeriesResult& t) {
  return json{{"value", t.value},
              {"terms_used", t.terms_used},
              {"converged", t.converged},
              {"last_term_magnitude", t.last_term_magnitude}};
}

// ---------------------------------------------------------------- diff ---

struct DiffArgs {
  std::string expr;
  std::string builtin;
  std::vector<std::string> params;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> points;
  std::string format = "table";
};

int run_diff(const DiffArgs& a) {
  const symcalc::SummationPolicy pol = base_policy();
  const symcalc::RealFunction f = resolve_function(a.expr, a.builtin, pol, parse_params(a.params));
  const symcalc::StepParams steps(a.alpha, a.beta);  // validates the step contract
  const char* op = a.beta == 0.0 ? "forward" : a.alpha == 0.0 ? "backward" : "symmetric";

  std::vector<double> values;
  values.reserve(a.points.size());
  for (double t : a.points) {
    if (a.beta == 0.0)
      values.push_back(symcalc::forward_diff(f, a.alpha, t));
    else if (a.alpha == 0.0)
      values.push_back(symcalc::backward_diff(f, a.beta, t));
    else
      values.push_back(symcalc::symmetric_diff(f, steps, t));
  }

  json results = json::array();
  for (std::size_t i = 0; i < a.points.size(); ++i)
    results.push_back(json{{"t", a.points[i]}, {"value", values[i]}});
  const json record = {{"schema_version", kSchemaVersion},
                       {"command", "diff"},
                       {"inputs", json{{"function", f.name()},
                                       {"source", a.builtin.empty() ? "expression" : "builtin"},
                                       {"alpha", a.alpha},
                                       {"beta", a.beta}}},
                       {"operator", op},
                       {"results", results}};

  print_record(
      record, parse_format(a.format),
      [&] {
        std::cout << "operator : " << op << " (alpha=" << fmt6(a.alpha)
                  << ", beta=" << fmt6(a.beta) << ")\n"
                  << "function : " << f.name() << "\n";
        std::printf("%20s  %20s\n", "t", "value");
        for (std::size_t i = 0; i < a.points.size(); ++i)
          std::printf("%20s  %20s\n", fmt6(a.points[i]).c_str(), fmt6(values[i]).c_str());
      },
      [&] {
        std::cout << "command,function,operator,alpha,beta,t,value\n";
        for (std::size_t i = 0; i < a.points.size(); ++i)
          std::cout << "diff," << csv_field(f.name()) << "," << op << "," << fmt17(a.alpha)
                    << "," << fmt17(a.beta) << "," << fmt17(a.points[i]) << ","
                    << fmt17(values[i]) << "\n";
      });
  return 0;
}

// ----------------------------------------------------------- integrate ---

struct IntegrateArgs {
  std::string expr;
  std::string builtin;
  std::vector<std::string> params;
  double alpha = 0.0;
  double beta = 0.0;
  double from = 0.0;
  double to = 0.0;
  std::optional<double> tol;
  std::optional<std::size_t> max_terms;
  std::string format = "table";
};

int run_integrate(const IntegrateArgs& a) {
  symcalc::SummationPolicy pol = base_policy();
  if (a.tol) {
    pol.rel_tol = *a.tol;
    pol.abs_tol = *a.tol / 100.0;
  }
  if (a.max_terms) pol.max_terms = *a.max_terms;  // flag beats the env var
  pol.validate();

  const symcalc::RealFunction f = resolve_function(a.expr, a.builtin, pol, parse_params(a.params));
  const symcalc::StepParams steps(a.alpha, a.beta);

  symcalc::IntegralResult res;
  bool integrable = true;
  std::string error_detail;
  try {
    if (a.beta == 0.0)
      res = symcalc::forward_integral(f, a.alpha, a.from, a.to, pol);
    else if (a.alpha == 0.0)
      res = symcalc::backward_integral(f, a.beta, a.from, a.to, pol);
    else
      res = symcalc::symmetric_integral(f, steps, a.from, a.to, pol);
  } catch (const symcalc::NotIntegrable& e) {
    res = e.partial();
    integrable = false;
    error_detail = e.what();
  }

  json tails = json::array();
  for (const auto& t : res.tails) tails.push_back(tail_json(t));
  json record = {{"schema_version", kSchemaVersion},
                 {"command", "integrate"},
                 {"inputs", json{{"function", f.name()},
                                 {"source", a.builtin.empty() ? "expression" : "builtin"},
                                 {"alpha", a.alpha},
                                 {"beta", a.beta},
                                 {"from", a.from},
                                 {"to", a.to},
                                 {"policy", policy_json(pol)}}},
                 {"result", json{{"kind", symcalc::to_cstring(res.kind)},
                                 {"value", res.value},
                                 {"integrable", integrable},
                                 {"tails", tails}}}};
  if (!integrable) record["error"] = "not-integrable";

  print_record(
      record, parse_format(a.format),
      [&] {
        std::cout << "integral : " << symcalc::to_cstring(res.kind) << " of '" << f.name()
                  << "' from " << fmt6(a.from) << " to " << fmt6(a.to)
                  << " (alpha=" << fmt6(a.alpha) << ", beta=" << fmt6(a.beta) << ")\n";
        if (integrable)
          std::cout << "value    : " << fmt6(res.value) << "\n";
        else
          std::cout << "value    : not integrable (partial " << fmt6(res.value) << ")\n";
        for (std::size_t i = 0; i < res.tails.size(); ++i) {
          const auto& t = res.tails[i];
          std::cout << "tail " << i << "   : value=" << fmt6(t.value)
                    << " terms=" << t.terms_used
                    << " converged=" << (t.converged ? "yes" : "no")
                    << " last|term|=" << fmt6(t.last_term_magnitude) << "\n";
        }
      },
      [&] {
        std::cout << "command,function,kind,alpha,beta,from,to,integrable,value,tail_index,"
                     "tail_value,tail_terms_used,tail_converged,tail_last_term_magnitude\n";
        const std::string prefix = std::string("integrate,") + csv_field(f.name()) + "," +
                                   symcalc::to_cstring(res.kind) + "," + fmt17(a.alpha) + "," +
                                   fmt17(a.beta) + "," + fmt17(a.from) + "," + fmt17(a.to) +
                                   "," + (integrable ? "true" : "false") + "," +
                                   fmt17(res.value);
        if (res.tails.empty()) {
          std::cout << prefix << ",,,,,\n";
        } else {
          for (std::size_t i = 0; i < res.tails.size(); ++i) {
            const auto& t = res.tails[i];
            std::cout << prefix << "," << i << "," << fmt17(t.value) << "," << t.terms_used
                      << "," << (t.converged ? "true" : "false") << ","
                      << fmt17(t.last_term_magnitude) << "\n";
          }
        }
      });
  if (!integrable) {
    std::cerr << "error: " << error_detail << "\n";
    return 4;
  }
  return 0;
}

// ----------------------------------------------------------------- mvt ---

struct MvtArgs {
  std::string kind;
  std::string fexpr;
  std::string gexpr;
  std::vector<std::string> params;
  double from = 0.0;
  double to = 0.0;
  std::optional<double> tol;
  std::string format = "table";
};

int run_mvt(const MvtArgs& a) {
  symcalc::SearchConfig cfg;
  if (a.tol) cfg.tol = *a.tol;
  cfg.validate();
  if (!(a.from < a.to))
    throw symcalc::InvalidParams("--from must be strictly less than --to");

  const symcalc::ParamMap params = parse_params(a.params);
  const symcalc::RealFunction f =
      symcalc::RealFunction::from_source(a.fexpr, symcalc::Interval::real_line(), params);

  symcalc::Witness w{0.0, 0.0, 0.0, 0.0};
  bool degenerate = false;
  std::string degenerate_detail;
  if (a.kind == "fermat") {
    const symcalc::GridExtremum ext = symcalc::find_interior_extremum(f, a.from, a.to, cfg);
    w = symcalc::fermat_witness(f, a.from, a.to, ext.t0, ext.kind, cfg);
  } else if (a.kind == "rolle") {
    w = symcalc::rolle_witness(f, a.from, a.to, cfg);
  } else if (a.kind == "lagrange") {
    w = symcalc::lagrange_witness(f, a.from, a.to, cfg);
  } else {  // cauchy, enforced by the option validator
    if (a.gexpr.empty())
      throw symcalc::InvalidParams("--kind cauchy requires -g/--denominator");
    const symcalc::RealFunction g =
        symcalc::RealFunction::from_source(a.gexpr, symcalc::Interval::real_line(), params);
    try {
      w = symcalc::cauchy_witness(f, g, a.from, a.to, cfg);
    } catch (const symcalc::DegenerateWitness& e) {
      w = e.witness();
      degenerate = true;
      degenerate_detail = e.what();
    }
  }

  json inputs = {{"kind", a.kind},
                 {"function", f.name()},
                 {"from", a.from},
                 {"to", a.to},
                 {"tol", cfg.tol}};
  if (!a.gexpr.empty()) inputs["g"] = a.gexpr;
  const json record = {{"schema_version", kSchemaVersion},
                       {"command", "mvt"},
                       {"inputs", inputs},
                       {"result", json{{"alpha", w.alpha},
                                       {"beta", w.beta},
                                       {"c", w.c},
                                       {"residual", w.residual},
                                       {"degenerate", degenerate}}}};

  print_record(
      record, parse_format(a.format),
      [&] {
        std::cout << "theorem  : " << a.kind << " on [" << fmt6(a.from) << ", " << fmt6(a.to)
                  << "]\n"
                  << "function : " << f.name() << "\n";
        if (!a.gexpr.empty()) std::cout << "g        : " << a.gexpr << "\n";
        std::cout << "witness  : c=" << fmt6(w.c) << " alpha=" << fmt6(w.alpha)
                  << " beta=" << fmt6(w.beta) << "\n"
                  << "residual : " << fmt6(w.residual) << (degenerate ? " (degenerate)" : "")
                  << "\n";
      },
      [&] {
        std::cout << "command,kind,function,g,from,to,alpha,beta,c,residual,degenerate\n";
        std::cout << "mvt," << a.kind << "," << csv_field(f.name()) << ","
                  << csv_field(a.gexpr) << "," << fmt17(a.from) << "," << fmt17(a.to) << ","
                  << fmt17(w.alpha) << "," << fmt17(w.beta) << "," << fmt17(w.c) << ","
                  << fmt17(w.residual) << "," << (degenerate ? "true" : "false") << "\n";
      });
  if (degenerate) {
    std::cerr << "error: " << degenerate_detail << "\n";
    return 5;
  }
  return 0;
}

// -------------------------------------------------------------- verify ---

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 42;
  int samples = 100;
  std::string format = "table";
};

int run_verify(const VerifyArgs& a) {
  symcalc::verify::SuiteConfig cfg;
  cfg.seed = a.seed;
  cfg.samples_per_case = a.samples;
  cfg.policy = base_policy();
  symcalc::verify::SuiteSelection which = symcalc::verify::SuiteSelection::All;
  if (a.suite == "theorem1") which = symcalc::verify::SuiteSelection::Theorem1;
  else if (a.suite == "reductions") which = symcalc::verify::SuiteSelection::Reductions;
  else if (a.suite == "ftc") which = symcalc::verify::SuiteSelection::Ftc;

  const symcalc::verify::SuiteReport rep = symcalc::verify::run_suite(cfg, which);

  json reports = json::array();
  for (const auto& r : rep.reports)
    reports.push_back(json{{"property", r.property},
                           {"functions", r.functions},
                           {"samples", r.samples},
                           {"skipped", r.skipped},
                           {"max_residual", r.max_residual},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
  const json record = {{"schema_version", kSchemaVersion},
                       {"command", "verify"},
                       {"inputs", json{{"suite", a.suite},
                                       {"seed", rep.seed},
                                       {"samples_per_case", a.samples}}},
                       {"result", json{{"all_pass", rep.all_pass}, {"reports", reports}}}};

  print_record(
      record, parse_format(a.format),
      [&] {
        long pass = 0;
        for (const auto& r : rep.reports) pass += r.pass ? 1 : 0;
        for (const auto& r : rep.reports) {
          std::printf("%-4s %-38s %-52s residual=%-12s samples=%ld skipped=%ld\n",
                      r.pass ? "ok" : "FAIL", r.property.c_str(), r.functions.c_str(),
                      fmt6(r.max_residual).c_str(), r.samples, r.skipped);
        }
        std::cout << (rep.all_pass ? "PASS" : "FAIL") << ": " << pass << "/"
                  << rep.reports.size() << " property reports passed (suite=" << a.suite
                  << ", seed=" << rep.seed << ")\n";
      },
      [&] {
        std::cout << "seed,property,functions,samples,skipped,max_residual,tolerance,pass\n";
        for (const auto& r : rep.reports)
          std::cout << rep.seed << "," << csv_field(r.property) << ","
                    << csv_field(r.functions) << "," << r.samples << "," << r.skipped << ","
                    << fmt17(r.max_residual) << "," << fmt17(r.tolerance) << ","
                    << (r.pass ? "true" : "false") << "\n";
      });
  return rep.all_pass ? 0 : 1;
}

// ------------------------------------------------------------ dispatch ---

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const symcalc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symcalc::UnboundParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symcalc::InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symcalc::NotIntegrable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const symcalc::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const symcalc::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const symcalc::MeasureTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const symcalc::DomainViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const symcalc::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const symcalc::ConstantFunction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const symcalc::DegenerateWitness& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const symcalc::SearchFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const symcalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

void add_format_option(CLI::App* cmd, std::string& slot) {
  cmd->add_option("--format", slot, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha,beta-symmetric quantum calculus toolkit"};
  app.require_subcommand(1);

  DiffArgs d;
  CLI::App* diff = app.add_subcommand("diff", "evaluate a difference operator at points");
  auto* diff_f = diff->add_option("-f,--function", d.expr, "expression in t");
  auto* diff_b = diff->add_option("--builtin", d.builtin,
                                  "built-in function (dyadic, dyadic-cumulative)");
  diff_f->excludes(diff_b);
  diff->add_option("--alpha", d.alpha, "forward step, >= 0")->check(CLI::NonNegativeNumber);
  diff->add_option("--beta", d.beta, "backward step, >= 0")->check(CLI::NonNegativeNumber);
  diff->add_option("--at", d.points, "evaluation points")->required()->expected(-1);
  diff->add_option("--param", d.params, "bind a parameter, name=value");
  add_format_option(diff, d.format);

  IntegrateArgs ig;
  CLI::App* integrate = app.add_subcommand("integrate", "evaluate a Noerlund-sum integral");
  auto* ig_f = integrate->add_option("-f,--function", ig.expr, "expression in t");
  auto* ig_b = integrate->add_option("--builtin", ig.builtin,
                                     "built-in function (dyadic, dyadic-cumulative)");
  ig_f->excludes(ig_b);
  integrate->add_option("--alpha", ig.alpha, "forward step, >= 0")
      ->check(CLI::NonNegativeNumber);
  integrate->add_option("--beta", ig.beta, "backward step, >= 0")
      ->check(CLI::NonNegativeNumber);
  integrate->add_option("--from", ig.from, "lower bound")->required();
  integrate->add_option("--to", ig.to, "upper bound")->required();
  integrate->add_option("--tol", ig.tol, "series tolerance (rel_tol; abs_tol = tol/100)");
  integrate->add_option("--max-terms", ig.max_terms,
                        "series term cap (overrides SYMCALC_MAX_TERMS)");
  integrate->add_option("--param", ig.params, "bind a parameter, name=value");
  add_format_option(integrate, ig.format);

  MvtArgs m;
  CLI::App* mvt = app.add_subcommand("mvt", "search a mean-value-theorem witness");
  mvt->add_option("--kind", m.kind, "theorem to instantiate")
      ->required()
      ->check(CLI::IsMember({"fermat", "rolle", "lagrange", "cauchy"}));
  mvt->add_option("-f,--function", m.fexpr, "expression in t")->required();
  mvt->add_option("-g,--denominator", m.gexpr, "second function for --kind cauchy");
  mvt->add_option("--from", m.from, "interval start")->required();
  mvt->add_option("--to", m.to, "interval end")->required();
  mvt->add_option("--tol", m.tol, "witness residual tolerance");
  mvt->add_option("--param", m.params, "bind a parameter, name=value");
  add_format_option(mvt, m.format);

  VerifyArgs v;
  CLI::App* verify = app.add_subcommand("verify", "run the property-verification suite");
  verify->add_option("--suite", v.suite, "which checks to run")
      ->check(CLI::IsMember({"all", "theorem1", "reductions", "ftc"}))
      ->capture_default_str();
  verify->add_option("--seed", v.seed, "sampling seed")->capture_default_str();
  verify->add_option("--samples", v.samples, "sample points per case")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format_option(verify, v.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }

  if (diff->parsed()) return guarded([&] { return run_diff(d); });
  if (integrate->parsed()) return guarded([&] { return run_integrate(ig); });
  if (mvt->parsed()) return guarded([&] { return run_mvt(m); });
  if (verify->parsed()) return guarded([&] { return run_verify(v); });
  return 2;  // unreachable: require_subcommand(1)
}
