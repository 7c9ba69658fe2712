#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cfode/analysis.hpp"
#include "cfode/csv.hpp"
#include "cfode/oracle.hpp"
#include "cfode/reproduce.hpp"
#include "cfode/schemes.hpp"

namespace {

using cfode::format_double;

struct ProblemOpts {
  std::string problem;
  std::string rhs_source;
  std::string exact_source;
  double alpha = 0.5;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> y0;
  std::optional<double> lambda;
  std::optional<double> p;
  std::optional<double> r;
  std::optional<double> kcap;
};

void add_problem_flags(CLI::App& cmd, ProblemOpts& o) {
  cmd.add_option("--problem", o.problem, "catalog problem name (see list-problems)");
  cmd.add_option("--rhs", o.rhs_source, "right-hand side f(t,y) for --problem custom");
  cmd.add_option("--exact", o.exact_source, "exact solution y(t) for a custom problem");
  cmd.add_option("--alpha", o.alpha, "fractional order in (0,1]")->capture_default_str();
  cmd.add_option("--a", o.a, "interval start")->capture_default_str();
  cmd.add_option("--b", o.b, "interval end")->capture_default_str();
  cmd.add_option("--y0", o.y0, "initial value (default depends on the problem)");
  cmd.add_option("--lambda", o.lambda, "linear: rate parameter");
  cmd.add_option("--p", o.p, "power: exponent");
  cmd.add_option("--r", o.r, "logistic: growth rate");
  cmd.add_option("--kcap", o.kcap, "logistic: carrying capacity K");
}

cfode::NamedProblem build_problem(const ProblemOpts& o) {
  const cfode::Alpha alpha(o.alpha);

  std::string name = o.problem;
  if (name.empty() && !o.rhs_source.empty()) name = "custom";
  if (name.empty()) {
    throw std::invalid_argument("select a problem with --problem or supply --rhs");
  }

  if (name == "custom") {
    if (o.rhs_source.empty()) {
      throw std::invalid_argument("a custom problem needs --rhs");
    }
    cfode::Expr rhs = cfode::Expr::parse(o.rhs_source);
    std::optional<cfode::Expr> exact;
    if (!o.exact_source.empty()) {
      exact = cfode::Expr::parse(o.exact_source);
    }
    return {"custom", {},
            cfode::IvpProblem(std::move(rhs), o.a, o.b, o.y0.value_or(1.0), alpha,
                              std::move(exact))};
  }

  if (!o.rhs_source.empty() || !o.exact_source.empty()) {
    throw std::invalid_argument("--rhs/--exact only apply to --problem custom");
  }
  std::map<std::string, double> params;
  if (o.lambda) params["lambda"] = *o.lambda;
  if (o.p) params["p"] = *o.p;
  if (o.r) params["r"] = *o.r;
  if (o.kcap) params["K"] = *o.kcap;
  const double y0 = o.y0.value_or(name == "power" ? 0.0 : 1.0);
  return cfode::make_problem(name, params, alpha, o.a, o.b, y0);
}

cfode::SchemeKind parse_scheme(const std::string& name) {
  const auto kind = cfode::scheme_from_string(name);
  if (!kind) {
    throw std::invalid_argument("unknown scheme '" + name +
                                "' (use conformable-euler, modified or classical)");
  }
  return *kind;
}

std::vector<double> positive_list(const std::string& text) {
  const std::vector<double> values = cfode::parse_double_list(text);
  for (double v : values) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("step sizes must be positive");
    }
  }
  return values;
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(std::cout);
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 2;
  }
  body(file);
  return 0;
}

// ---------------------------------------------------------------- solve

struct SolveOpts {
  ProblemOpts problem;
  int n = 100;
  std::string scheme = "modified";
  std::string out;
};

int run_solve(const SolveOpts& o) {
  const cfode::NamedProblem entry = build_problem(o.problem);
  const cfode::SchemeKind scheme = parse_scheme(o.scheme);
  const cfode::UniformGrid grid =
      cfode::make_grid(entry.problem.t_start(), entry.problem.t_end(), o.n);
  const cfode::Trajectory traj = cfode::solve(entry.problem, grid, scheme);

  return with_output(o.out, [&](std::ostream& os) {
    os << "k,t,y\n";
    for (std::size_t k = 0; k < traj.values.size(); ++k) {
      os << k << ',' << format_double(grid.node(static_cast<int>(k))) << ','
         << format_double(traj.values[k]) << '\n';
    }
    if (traj.diverged()) {
      os << "# diverged at k=" << *traj.diverged_at << '\n';
    }
  });
}

// -------------------------------------------------------------- converge

struct ConvergeOpts {
  ProblemOpts problem;
  int n0 = 32;
  int levels = 5;
  std::string scheme = "modified";
  std::string out;
};

int run_converge(const ConvergeOpts& o) {
  const cfode::NamedProblem entry = build_problem(o.problem);
  const cfode::SchemeKind scheme = parse_scheme(o.scheme);
  const cfode::ConvergenceReport report =
      cfode::convergence_study(entry.problem, scheme, o.n0, o.levels, entry.name);

  return with_output(o.out, [&](std::ostream& os) {
    os << "scheme,problem,alpha,N,h,final_abs_err,max_abs_err,order_est\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const cfode::ConvergenceRow& row = report.rows[i];
      os << cfode::to_string(report.scheme) << ',' << report.problem << ','
         << format_double(report.alpha) << ',' << row.n_steps << ',' << format_double(row.h)
         << ',' << format_double(row.final_abs_err) << ',' << format_double(row.max_abs_err)
         << ',';
      if (i > 0) {
        os << format_double(report.orders[i - 1]);
      }
      os << '\n';
    }
    os << "# verdict: " << cfode::to_string(report.verdict) << '\n';
  });
}

// ------------------------------------------------------------ invalidity

struct InvalidityOpts {
  double alpha = 0.5;
  double t0 = 0.0;
  int k = 1;
  std::string h_list = "1e-1,1e-2,1e-3";
  std::string out;
};

int run_invalidity(const InvalidityOpts& o) {
  const cfode::Alpha alpha(o.alpha);
  if (o.t0 < 0.0) {
    throw std::invalid_argument("--t0 must be nonnegative");
  }
  if (o.k < 1) {
    throw std::invalid_argument("--k must be at least 1");
  }
  const std::vector<double> h_values = positive_list(o.h_list);
  for (std::size_t i = 1; i < h_values.size(); ++i) {
    if (!(h_values[i] < h_values[i - 1])) {
      throw std::invalid_argument("--h-list must strictly decrease");
    }
  }
  const cfode::RatioDiagnostic diag = cfode::ratio_sweep(alpha, o.t0, o.k, h_values);

  return with_output(o.out, [&](std::ostream& os) {
    os << "alpha,t0,k,h,implied_alpha\n";
    for (const cfode::RatioPoint& row : diag.rows) {
      os << format_double(diag.alpha) << ',' << format_double(diag.t0) << ',' << diag.k << ','
         << format_double(row.h) << ',' << format_double(row.implied_alpha) << '\n';
    }
  });
}

// ------------------------------------------------------------- cfd-check

struct CfdCheckOpts {
  ProblemOpts problem;
  double t0 = 1.0;
  std::string h_list = "1e-3,1e-5,1e-7";
  std::string out;
};

int run_cfd_check(const CfdCheckOpts& o) {
  const cfode::NamedProblem entry = build_problem(o.problem);
  if (!entry.problem.exact()) {
    throw std::invalid_argument("cfd-check needs an exact solution (--exact or a catalog problem)");
  }
  if (!(o.t0 > 0.0)) {
    throw std::invalid_argument("--t0 must be positive (the CFD limit is taken at t > 0)");
  }
  const std::vector<double> h_values = positive_list(o.h_list);
  const cfode::Alpha alpha = entry.problem.alpha();
  const cfode::Expr exact = *entry.problem.exact();
  const cfode::Expr rhs = entry.problem.rhs();
  const auto y_of_t = [&exact](double u) { return exact.eval(u, 0.0); };
  const double target = rhs.eval(o.t0, y_of_t(o.t0));

  return with_output(o.out, [&](std::ostream& os) {
    os << "t,eps_or_h,estimate,target,abs_err\n";
    os << "# epsilon-quotient of the derivative definition\n";
    for (double eps : h_values) {
      const double est = cfode::cfd_limit_estimate(y_of_t, o.t0, alpha, eps);
      os << format_double(o.t0) << ',' << format_double(eps) << ',' << format_double(est) << ','
         << format_double(target) << ',' << format_double(std::abs(est - target)) << '\n';
    }
    os << "# discrete conformable derivative over one step\n";
    for (double h : h_values) {
      const cfode::Trajectory sample{cfode::UniformGrid(o.t0, h, 1),
                                     {y_of_t(o.t0), y_of_t(o.t0 + h)},
                                     std::nullopt};
      const double est = cfode::discrete_cfd(sample, alpha).front();
      os << format_double(o.t0) << ',' << format_double(h) << ',' << format_double(est) << ','
         << format_double(target) << ',' << format_double(std::abs(est - target)) << '\n';
    }
  });
}

// --------------------------------------------------------- list-problems

int run_list_problems(const std::string& out) {
  return with_output(out, [](std::ostream& os) {
    os << "name      parameters      exact\n";
    for (const cfode::NamedProblem& entry : cfode::catalog()) {
      std::string params;
      for (const auto& [key, value] : entry.params) {
        params += (params.empty() ? "" : ", ") + key + "=" + format_double(value);
      }
      if (entry.name == "custom") params = "(from --rhs)";
      if (params.empty()) params = "-";
      os << entry.name << std::string(10 - entry.name.size(), ' ') << params
         << std::string(params.size() < 16 ? 16 - params.size() : 1, ' ')
         << (entry.problem.exact() ? "yes" : "no") << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers and diagnostics for conformable-fractional initial value problems\n"
               "D^alpha y = f(t, y), y(a) = y0, 0 < alpha <= 1"};
  app.require_subcommand(0, 1);

  SolveOpts solve_opts;
  CLI::App* solve_cmd = app.add_subcommand("solve", "integrate one problem, emit k,t,y CSV");
  add_problem_flags(*solve_cmd, solve_opts.problem);
  solve_cmd->add_option("--n", solve_opts.n, "number of steps")->capture_default_str();
  solve_cmd->add_option("--scheme", solve_opts.scheme,
                        "conformable-euler | modified | classical")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve_opts.out, "write CSV here instead of stdout");

  ConvergeOpts converge_opts;
  CLI::App* converge_cmd =
      app.add_subcommand("converge", "mesh-refinement study with empirical orders");
  add_problem_flags(*converge_cmd, converge_opts.problem);
  converge_cmd->add_option("--n0", converge_opts.n0, "coarsest step count")
      ->capture_default_str();
  converge_cmd->add_option("--levels", converge_opts.levels, "number of halvings (>= 3)")
      ->capture_default_str();
  converge_cmd->add_option("--scheme", converge_opts.scheme,
                           "conformable-euler | modified | classical")
      ->capture_default_str();
  converge_cmd->add_option("--out", converge_opts.out, "write CSV here instead of stdout");

  InvalidityOpts invalidity_opts;
  CLI::App* invalidity_cmd = app.add_subcommand(
      "invalidity", "tabulate the consistency ratio (t0/h + k)^(1-alpha)");
  invalidity_cmd->add_option("--alpha", invalidity_opts.alpha, "fractional order")
      ->capture_default_str();
  invalidity_cmd->add_option("--t0", invalidity_opts.t0, "grid origin")->capture_default_str();
  invalidity_cmd->add_option("--k", invalidity_opts.k, "node index (>= 1)")
      ->capture_default_str();
  invalidity_cmd->add_option("--h-list", invalidity_opts.h_list,
                             "comma-separated decreasing step sizes")
      ->capture_default_str();
  invalidity_cmd->add_option("--out", invalidity_opts.out, "write CSV here instead of stdout");

  CfdCheckOpts cfd_opts;
  CLI::App* cfd_cmd = app.add_subcommand(
      "cfd-check", "compare derivative estimates against f(t, y(t)) for a known solution");
  add_problem_flags(*cfd_cmd, cfd_opts.problem);
  cfd_cmd->add_option("--t0", cfd_opts.t0, "evaluation point t > 0")->capture_default_str();
  cfd_cmd->add_option("--h-list", cfd_opts.h_list, "epsilon/step values")
      ->capture_default_str();
  cfd_cmd->add_option("--out", cfd_opts.out, "write CSV here instead of stdout");

  std::string list_out;
  CLI::App* list_cmd = app.add_subcommand("list-problems", "show the problem catalog");
  list_cmd->add_option("--out", list_out, "write listing here instead of stdout");

  std::string reproduce_out;
  CLI::App* reproduce_cmd =
      app.add_subcommand("reproduce", "run the full acceptance battery and print PASS/FAIL");
  reproduce_cmd->add_option("--out", reproduce_out, "write report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(solve_cmd)) return run_solve(solve_opts);
    if (app.got_subcommand(converge_cmd)) return run_converge(converge_opts);
    if (app.got_subcommand(invalidity_cmd)) return run_invalidity(invalidity_opts);
    if (app.got_subcommand(cfd_cmd)) return run_cfd_check(cfd_opts);
    if (app.got_subcommand(list_cmd)) return run_list_problems(list_out);
    if (app.got_subcommand(reproduce_cmd)) {
      return with_output(reproduce_out,
                         [](std::ostream& os) { os << cfode::reproduce_report(); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::cout << app.help();
  return 0;
}
