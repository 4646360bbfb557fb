#include "feq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "feq/eqdsl.hpp"
#include "feq/multiadditive.hpp"
#include "feq/solver.hpp"
#include "feq/spectral.hpp"

namespace feq::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::size_t ring_arity = 1;
  unsigned bound = 4;
  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned bound_from_environment() {
  if (const char* env = std::getenv("FEQ_BOUND")) {
    try {
      unsigned long v = std::stoul(env);
      if (v >= 1 && v <= 12) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 4;
}

std::string read_equation(const std::string& inline_text, const std::string& file) {
  if (!file.empty() && !inline_text.empty()) throw UsageError("give the equation either inline or with --file");
  if (file.empty()) {
    if (inline_text.empty()) throw UsageError("missing equation");
    return inline_text;
  }
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  for (char& c : text)
    if (c == '\n' || c == '\r') c = ' ';
  return text;
}

std::string tuple_text(const std::vector<Poly>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].str();
  return s + ")";
}

ordered_json solution_json(const EquationSpec& spec, const SolutionStructure& s) {
  ordered_json j;
  j["equation"] = render_spec(spec);
  j["functions"] = ordered_json::array();
  for (const auto& f : s.functions) {
    mpz_class den = 1;
    for (const auto& c : f.coeffs) den = lcm(den, c.denominator());
    den = lcm(den, f.x_coeff.denominator());
    const Rational scale{den};
    ordered_json terms = ordered_json::array();
    for (std::size_t i = 0; i < s.parameters.size(); ++i)
      if (!f.coeffs[i].is_zero())
        terms.push_back({{"basis", s.parameters[i].name}, {"coeff", (f.coeffs[i] * scale).str()}});
    if (!f.x_coeff.is_zero()) terms.push_back({{"basis", "X"}, {"coeff", (f.x_coeff * scale).str()}});
    j["functions"].push_back({{"name", f.name}, {"denominatorCleared", scale.str()}, {"terms", terms}});
  }
  j["status"] = status_name(s.status);
  j["constraints"] = render_constraints(s);
  j["parameters"] = ordered_json::array();
  for (const auto& p : s.parameters) {
    j["parameters"].push_back({{"name", p.name},
                               {"kind", p.kind == ParameterKind::derivation ? "derivation" : "additive"},
                               {"order", p.level}});
  }
  return j;
}

int cmd_solve(const RunConfig& cfg, const std::string& text, bool normalized, std::ostream& out) {
  const EquationSpec spec = parse(text);
  SolveOptions opts;
  opts.normalized = normalized;
  opts.bound = cfg.bound;
  opts.ring_arity = cfg.ring_arity;
  const SolutionStructure s = solve(spec, opts);
  if (cfg.json) {
    out << solution_json(spec, s).dump(2) << "\n";
  } else {
    out << render_solution(s);
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& text, bool normalized,
               const std::vector<std::string>& assigns, std::ostream& out) {
  const EquationSpec spec = parse(text);
  std::map<std::string, std::string> given;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("assignment '" + a + "' is not of the form NAME=OPERATOR");
    if (!given.emplace(a.substr(0, eq), a.substr(eq + 1)).second) throw UsageError("'" + a.substr(0, eq) + "' assigned twice");
  }
  const auto& fns = spec.functions();
  const bool direct = !given.empty() && std::all_of(given.begin(), given.end(), [&](const auto& kv) {
    return std::find(fns.begin(), fns.end(), kv.first) != fns.end();
  });

  std::optional<VerificationFailure> failure;
  ordered_json report;
  if (direct) {
    Assignment assignment;
    for (const auto& fn : fns) {
      auto it = given.find(fn);
      assignment.emplace(fn, it == given.end() ? AdditiveMap::zero(cfg.ring_arity)
                                               : AdditiveMap(parse_operator(it->second, cfg.ring_arity)));
    }
    failure = verify_assignment(spec, assignment, cfg.ring_arity, cfg.bound);
    report["mode"] = "functions";
  } else {
    SolveOptions opts;
    opts.normalized = normalized;
    opts.bound = cfg.bound;
    opts.ring_arity = cfg.ring_arity;
    const SolutionStructure s = solve(spec, opts);
    Instance inst;
    for (const auto& [name, op] : given) {
      auto p = std::find_if(s.parameters.begin(), s.parameters.end(), [&](const Parameter& q) { return q.name == name; });
      if (p == s.parameters.end()) throw UsageError("'" + name + "' is neither a function nor a parameter of the solution");
      if (p->kind == ParameterKind::derivation) inst.derivations.emplace(name, parse_operator(op, cfg.ring_arity));
      else inst.additive.emplace(name, AdditiveMap(parse_operator(op, cfg.ring_arity)));
    }
    for (const auto& p : s.parameters) {
      if (p.kind == ParameterKind::derivation) inst.derivations.try_emplace(p.name, DiffOperator::zero(cfg.ring_arity));
      else inst.additive.try_emplace(p.name, AdditiveMap::zero(cfg.ring_arity));
    }
    try {
      failure = verify_solution(spec, s, inst, cfg.ring_arity, cfg.bound);
    } catch (const std::invalid_argument& e) {
      if (cfg.json) out << ordered_json{{"result", "fail"}, {"reason", e.what()}}.dump(2) << "\n";
      else out << "FAIL: " << e.what() << "\n";
      return kFailed;
    }
    report["mode"] = "parameters";
    for (const auto& line : render_functions(s)) report["solution"].push_back(line);
  }

  report["bound"] = cfg.bound;
  if (failure) {
    report["result"] = "fail";
    report["degree"] = failure->degree;
    std::vector<std::string> xs;
    for (const auto& x : failure->tuple) xs.push_back(x.str());
    report["tuple"] = xs;
    report["value"] = failure->value.str();
  } else {
    report["result"] = "pass";
  }
  if (cfg.json) {
    out << report.dump(2) << "\n";
  } else if (failure) {
    out << "FAIL at degree " << failure->degree << ": " << tuple_text(failure->tuple) << " gives "
        << failure->value.str() << "\n";
  } else {
    out << "PASS (monomials of degree <= " << cfg.bound << ")\n";
  }
  return failure ? kFailed : kOk;
}

int cmd_basis(const RunConfig& cfg, unsigned n, std::ostream& out) {
  if (n == 0) throw UsageError("basis needs n >= 1");
  const auto lines = render_basis(n);
  if (cfg.json) {
    ordered_json j;
    j["n"] = n;
    j["rows"] = lines;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& line : lines) out << line << "\n";
  }
  return kOk;
}

std::string combination_text(const Combination& c) {
  std::vector<std::pair<std::string, Rational>> items(c.begin(), c.end());
  return render_linear(items);
}

int cmd_spectral(unsigned n, std::optional<unsigned> power, bool limit, std::optional<std::string> descend,
                 std::ostream& out) {
  if (n == 0) throw UsageError("spectral needs n >= 1");
  if (power) {
    out << "M^" << *power << " =\n" << render_matrix(matrix_power(transfer_matrix(n), *power));
    return kOk;
  }
  if (limit) {
    out << "lim M^k =\n" << render_matrix(limit_matrix(n));
    return kOk;
  }
  if (descend) {
    if (!descend->empty()) {
      const EquationSpec spec = parse(*descend);
      if (spec.degree() != n + 1)
        throw UsageError("the equation has degree " + (spec.degree() ? std::to_string(*spec.degree()) : "?") +
                         ", expected " + std::to_string(n + 1));
      out << render_solution(descending_solve(spec));
      return kOk;
    }
    const DescendResult r = descending_solve(n);
    for (const auto& step : r.steps) {
      out << "level " << step.level << ": limit column (";
      for (std::size_t i = 0; i < step.limit_column.size(); ++i) out << (i ? ", " : "") << step.limit_column[i];
      out << ")\n  " << combination_text(step.top) << " lies in D" << step.level << "\n";
      for (std::size_t j = step.reduced.size(); j-- > 0;)
        out << "  f~" << j + 1 << " = " << combination_text(step.reduced[j]) << "\n";
    }
    out << "solution:\n" << render_solution(descending_structure(r));
    return kOk;
  }
  out << "M =\n" << render_matrix(transfer_matrix(n));
  return kOk;
}

int cmd_polarize(const RunConfig& cfg, unsigned n, std::ostream& out) {
  if (n == 0) throw UsageError("polarize needs n >= 1");
  const AdditiveMap a(DiffOperator::of(BasicDerivation::partial(cfg.ring_arity, 0)));
  const PolarizationReport r = polarization_report(a, n, cfg.bound);
  if (cfg.json) {
    ordered_json j{{"n", n},
                   {"bound", cfg.bound},
                   {"mixed", {{"checked", r.mixed_checked}, {"failed", r.mixed_failed}}},
                   {"pure", {{"checked", r.pure_checked}, {"failed", r.pure_failed}}},
                   {"vanishing", {{"checked", r.vanishing_checked}, {"failed", r.vanishing_failed}}},
                   {"result", r.passed() ? "pass" : "fail"}};
    out << j.dump(2) << "\n";
  } else {
    out << "A(x1..x" << n << ") = d1(x1)*...*d1(x" << n << "), monomials of degree <= " << cfg.bound << "\n"
        << "  mixed differences = n!*A(y):      " << r.mixed_checked - r.mixed_failed << "/" << r.mixed_checked << "\n"
        << "  pure differences = n!*A*(y):      " << r.pure_checked - r.pure_failed << "/" << r.pure_checked << "\n"
        << "  " << n + 1 << " differences vanish:           " << r.vanishing_checked - r.vanishing_failed << "/"
        << r.vanishing_checked << "\n"
        << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  return r.passed() ? kOk : kFailed;
}

int cmd_analyze(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  const std::vector<Rational> coeffs = parse_coefficients(text);
  const SingleReport rep = analyze_single(coeffs);
  const Residual res = exponential_residual(coeffs);
  const EquationSpec eq = single_equation(coeffs, "A");
  const unsigned n = static_cast<unsigned>(coeffs.size()) - 1;

  // d^j on the first variable, j = 1..n+1
  std::vector<bool> solves;
  bool agree = true;
  for (unsigned j = 1; j <= n + 1; ++j) {
    Assignment fns;
    fns.emplace("A", AdditiveMap(DiffOperator::power(BasicDerivation::partial(cfg.ring_arity, 0), j)));
    const bool ok = !verify_assignment(eq, fns, cfg.ring_arity, cfg.bound).has_value();
    solves.push_back(ok);
    agree = agree && (ok == (j <= rep.max_order));
  }
  std::vector<std::string> roots;
  for (const auto& r : res.roots) roots.push_back(r.str());

  if (cfg.json) {
    ordered_json j{{"equation", render_spec(eq)},
                   {"sumWeighted", rep.sum_weighted.str()},
                   {"maxOrder", rep.max_order},
                   {"binomialProportional", rep.binomial_proportional},
                   {"status", rep.trivial_only ? "trivial-only" : "parametrized"},
                   {"residual", res.poly.str()},
                   {"rationalRoots", roots},
                   {"powersSolving", solves},
                   {"bruteForceAgrees", agree}};
    out << j.dump(2) << "\n";
  } else {
    out << "equation: " << render_spec(eq) << "\n"
        << "sum i*a_i = " << rep.sum_weighted << "\n"
        << "max order = " << rep.max_order << (rep.trivial_only ? " (trivial-only)" : "") << "\n"
        << "binomial proportional = " << (rep.binomial_proportional ? "yes" : "no") << "\n"
        << "residual P(t) = " << res.poly.str() << "\n"
        << "rational roots = ";
    if (roots.empty()) out << "none";
    for (std::size_t i = 0; i < roots.size(); ++i) out << (i ? ", " : "") << roots[i];
    out << "\nd^j solves for j = 1.." << n + 1 << ":";
    for (bool s : solves) out << (s ? " yes" : " no");
    out << "\nbrute force " << (agree ? "agrees" : "DISAGREES") << " with max order\n";
  }
  return agree ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver for functional equations sum c x^p f(x^q) = 0 in additive unknowns", "feq"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.bound = bound_from_environment();
  app.add_option("--m", cfg.ring_arity, "Number of ring variables t1..tm")->check(CLI::Range(1, 4));
  app.add_option("--bound", cfg.bound, "Verification degree bound (default 4 or $FEQ_BOUND)")->check(CLI::Range(1, 12));
  app.add_flag("--json", cfg.json, "Structured output");

  std::string equation, file;
  bool normalized = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an equation");
  solve_cmd->add_option("equation", equation, "Equation text");
  solve_cmd->add_option("--file", file, "Read the equation from a file");
  solve_cmd->add_flag("--normalized", normalized, "Assume f(1) = 0 for every unknown");

  std::vector<std::string> assigns;
  auto* verify_cmd = app.add_subcommand("verify", "Verify an assignment against an equation");
  verify_cmd->add_option("equation", equation, "Equation text");
  verify_cmd->add_option("--file", file, "Read the equation from a file");
  verify_cmd->add_option("--assign", assigns, "NAME=OPERATOR for parameters (D1=d1.d1) or functions (f=d1)");
  verify_cmd->add_flag("--normalized", normalized, "Assume f(1) = 0 for every unknown");

  unsigned n = 0;
  auto* basis_cmd = app.add_subcommand("basis", "Closed-form solution table of order n");
  basis_cmd->add_option("n", n, "Order")->required();

  unsigned power = 0;
  std::string descend;
  auto* spectral_cmd = app.add_subcommand("spectral", "Transfer matrix, powers, limit and descending process");
  spectral_cmd->add_option("n", n, "Order")->required();
  auto* power_opt = spectral_cmd->add_option("--power", power, "Print M^k");
  auto* limit_opt = spectral_cmd->add_flag("--limit", "Print the limit of M^k");
  auto* descend_opt = spectral_cmd->add_option("--descend", descend, "Descending process, optionally on an equation")
                          ->expected(0, 1);
  power_opt->excludes(limit_opt)->excludes(descend_opt);
  limit_opt->excludes(descend_opt);

  unsigned order = 0;
  auto* polarize_cmd = app.add_subcommand("polarize", "Polarization identities for a product of derivatives");
  polarize_cmd->add_option("--n", order, "Number of arguments")->required();

  std::string coeffs;
  auto* analyze_cmd = app.add_subcommand("analyze", "Single-function equation from coefficients a1..a(n+1)");
  analyze_cmd->add_option("coefficients", coeffs, "e.g. \"-2, 1, 1\"")->required();

  std::vector<const char*> argv{"feq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string text;
  try {
    if (*solve_cmd) {
      text = read_equation(equation, file);
      return cmd_solve(cfg, text, normalized, out);
    }
    if (*verify_cmd) {
      text = read_equation(equation, file);
      return cmd_verify(cfg, text, normalized, assigns, out);
    }
    if (*basis_cmd) return cmd_basis(cfg, n, out);
    if (*spectral_cmd) {
      return cmd_spectral(n, power_opt->count() ? std::optional<unsigned>(power) : std::nullopt,
                          limit_opt->count() > 0,
                          descend_opt->count() ? std::optional<std::string>(descend) : std::nullopt, out);
    }
    if (*polarize_cmd) return cmd_polarize(cfg, order, out);
    if (*analyze_cmd) return cmd_analyze(cfg, coeffs, out);
  } catch (const ParseError& e) {
    err << e.annotate(text) << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace feq::cli
