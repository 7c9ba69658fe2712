#include "cfode/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "cfode/analysis.hpp"
#include "cfode/oracle.hpp"
#include "cfode/schemes.hpp"

namespace cfode {

namespace {

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double default_y0(const std::string& name) { return name == "power" ? 0.0 : 1.0; }

double max_pairwise_diff(const Trajectory& a, const Trajectory& b) {
  double diff = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    diff = std::max(diff, std::abs(a.values[k] - b.values[k]));
  }
  return diff;
}

// 1. All three schemes coincide at alpha = 1.
CriterionResult scheme_equivalence() {
  const NamedProblem linear = make_problem("linear", {}, Alpha(1.0), 0.0, 1.0, 1.0);
  const UniformGrid grid = make_grid(0.0, 1.0, 64);
  const Trajectory conf = solve(linear.problem, grid, SchemeKind::ConformableEuler);
  const Trajectory mod = solve(linear.problem, grid, SchemeKind::ModifiedConformableEuler);
  const Trajectory classic = solve(linear.problem, grid, SchemeKind::ClassicalEuler);
  const double worst = std::max({max_pairwise_diff(conf, mod), max_pairwise_diff(conf, classic),
                                 max_pairwise_diff(mod, classic)});
  return {1, "schemes coincide at alpha=1 (linear, N=64)", worst < 1e-12,
          "max pairwise difference " + short_num(worst)};
}

// 2. The modified method shows first-order behaviour for every alpha.
CriterionResult modified_convergence() {
  bool passed = true;
  std::ostringstream detail;
  for (const char* name : {"linear", "power"}) {
    for (double a : {0.3, 0.5, 0.8, 1.0}) {
      const NamedProblem entry = make_problem(name, {}, Alpha(a), 0.0, 1.0, default_y0(name));
      const ConvergenceReport report = convergence_study(
          entry.problem, SchemeKind::ModifiedConformableEuler, 32, 5, name);

      bool decreasing = true;
      for (std::size_t i = 1; i < report.rows.size(); ++i) {
        decreasing =
            decreasing && report.rows[i].final_abs_err < report.rows[i - 1].final_abs_err;
      }
      bool in_band = report.verdict == Verdict::Converging;
      const bool ok = in_band && decreasing;
      passed = passed && ok;

      detail << (detail.tellp() > 0 ? "; " : "") << name << " alpha=" << short_num(a)
             << " orders";
      for (double order : report.orders) {
        detail << ' ' << short_num(order);
      }
      if (!ok) {
        detail << " <- outside [" << short_num(kOrderBandLow) << ',' << short_num(kOrderBandHigh)
               << ']';
      }
    }
  }
  return {2, "modified method converges for alpha in {0.3,0.5,0.8,1}", passed, detail.str()};
}

// 3. The original method fails to converge for alpha < 1.
CriterionResult original_invalidity() {
  bool passed = true;
  std::ostringstream detail;
  for (double a : {0.3, 0.5, 0.8}) {
    const NamedProblem entry = make_problem("linear", {}, Alpha(a), 0.0, 1.0, 1.0);
    const ConvergenceReport report =
        convergence_study(entry.problem, SchemeKind::ConformableEuler, 32, 5, "linear");
    bool non_decreasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      non_decreasing =
          non_decreasing && report.rows[i].final_abs_err >= report.rows[i - 1].final_abs_err;
    }
    const bool ok = non_decreasing || report.verdict == Verdict::Diverged;
    passed = passed && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << "alpha=" << short_num(a) << " final errors";
    for (const ConvergenceRow& row : report.rows) {
      detail << ' ' << short_num(row.final_abs_err);
    }
  }

  // At alpha=0.5, N=100 the closed form is y_N = (1 + 2 sqrt(h))^N.
  const NamedProblem entry = make_problem("linear", {}, Alpha(0.5), 0.0, 1.0, 1.0);
  const Trajectory traj =
      solve(entry.problem, make_grid(0.0, 1.0, 100), SchemeKind::ConformableEuler);
  const double computed = traj.values.back();
  double closed_form = 1.0;
  for (int k = 0; k < 100; ++k) {
    closed_form *= 1.0 + 2.0 * std::sqrt(0.01);
  }
  const bool blow_up = computed > 1e7 && !traj.diverged() &&
                       std::abs(computed - closed_form) <= 1e-9 * closed_form;
  passed = passed && blow_up;
  detail << "; alpha=0.5 N=100 y(1)=" << short_num(computed) << " vs exact e^2="
         << short_num(std::exp(2.0));

  return {3, "original method invalid for alpha<1 (linear)", passed, detail.str()};
}

// 4. implied_alpha reproduces the inconsistency ratio exactly.
CriterionResult inconsistency_ratio() {
  const Alpha half(0.5);
  const double h_values[] = {1e-1, 1e-2, 1e-3};
  const double targets[] = {std::sqrt(11.0), std::sqrt(101.0), std::sqrt(1001.0)};
  bool passed = true;
  std::ostringstream detail;
  detail << "t0=1 k=1:";
  for (int i = 0; i < 3; ++i) {
    const double v = implied_alpha(half, 1.0, 1, h_values[i]);
    passed = passed && std::abs(v - targets[i]) < 1e-4;
    detail << ' ' << short_num(v);
  }

  for (double h : h_values) {
    passed = passed && implied_alpha(Alpha(1.0), 1.0, 1, h) == 1.0 &&
             implied_alpha(Alpha(1.0), 0.0, 5, h) == 1.0 &&
             implied_alpha(Alpha(1.0), 2.5, 7, h) == 1.0;
  }

  const double at_origin = implied_alpha(half, 0.0, 9, h_values[0]);
  bool h_independent = at_origin == 3.0 || std::abs(at_origin - 3.0) < 4e-15;
  for (double h : h_values) {
    h_independent = h_independent && implied_alpha(half, 0.0, 9, h) == at_origin;
  }
  passed = passed && h_independent;
  detail << "; t0=0 k=9: " << short_num(at_origin) << " for every h";

  return {4, "inconsistency ratio (t0/h+k)^(1-alpha) as predicted", passed, detail.str()};
}

// 5. The discrete conformable derivative error halves with h.
CriterionResult discrete_cfd_fidelity() {
  const Alpha half(0.5);
  const Expr parabola = Expr::parse("t^2");
  double errs[3];
  const double steps[] = {0.02, 0.01, 0.005};
  for (int i = 0; i < 3; ++i) {
    const int n = static_cast<int>(std::lround(1.0 / steps[i]));
    const UniformGrid grid = make_grid(0.5, 1.5, n);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      samples.push_back(parabola.eval(grid.node(k), 0.0));
    }
    const Trajectory traj{grid, std::move(samples), std::nullopt};
    const std::vector<double> d = discrete_cfd(traj, half);
    double max_err = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double t_k = grid.node(static_cast<int>(k));
      max_err = std::max(max_err, std::abs(d[k] - 2.0 * std::pow(t_k, 1.5)));
    }
    errs[i] = max_err;
  }
  const double r1 = errs[1] / errs[0];
  const double r2 = errs[2] / errs[1];
  const bool passed = r1 >= 0.375 && r1 <= 0.625 && r2 >= 0.375 && r2 <= 0.625;
  return {5, "discrete CFD error halves with h (y=t^2, alpha=0.5)", passed,
          "max errors " + short_num(errs[0]) + " " + short_num(errs[1]) + " " +
              short_num(errs[2]) + ", ratios " + short_num(r1) + " " + short_num(r2)};
}

// 6. Catalog exact solutions verify against the derivative's definition
//    and against the reference integrator.
CriterionResult catalog_certification() {
  bool passed = true;
  std::ostringstream detail;
  for (const NamedProblem& entry : catalog()) {
    if (!entry.problem.exact()) continue;
    const IvpProblem& p = entry.problem;

    std::mt19937 gen(20260808u);
    const double lo = p.t_start() + 0.05 * (p.t_end() - p.t_start());
    double worst_residual = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double u = static_cast<double>(gen()) / 4294967296.0;
      const double t = lo + (p.t_end() - lo) * u;
      worst_residual =
          std::max(worst_residual, cfd_residual(*p.exact(), p.rhs(), p.alpha(), t, 1e-7));
    }

    const Trajectory ref = reference_solve(p, 16, 1024);
    double worst_rel = 0.0;
    for (std::size_t k = 0; k < ref.values.size(); ++k) {
      const double exact = p.exact()->eval(ref.grid.node(static_cast<int>(k)), 0.0);
      if (ref.values[k] == exact) continue;
      worst_rel = std::max(worst_rel, std::abs(ref.values[k] - exact) /
                                          std::max(std::abs(exact), 1e-300));
    }

    passed = passed && worst_residual < 1e-5 && worst_rel <= 1e-7;
    detail << (detail.tellp() > 0 ? "; " : "") << entry.name << " residual "
           << short_num(worst_residual) << ", reference rel err " << short_num(worst_rel);
  }
  return {6, "catalog exact solutions self-certify", passed, detail.str()};
}

std::vector<CriterionResult> run_criteria_1_to_6() {
  return {scheme_equivalence(), modified_convergence(), original_invalidity(),
          inconsistency_ratio(), discrete_cfd_fidelity(), catalog_certification()};
}

std::string serialize(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    out += '[';
    out += r.passed ? "PASS" : "FAIL";
    out += "] criterion ";
    out += std::to_string(r.id);
    out += ": ";
    out += r.title;
    out += "\n        ";
    out += r.detail;
    out += '\n';
  }
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria() {
  std::vector<CriterionResult> results = run_criteria_1_to_6();

  // 7. The whole battery above is reproducible byte for byte.
  const std::string first = serialize(run_criteria_1_to_6());
  const std::string second = serialize(run_criteria_1_to_6());
  results.push_back({7, "identical reruns produce identical bytes", first == second,
                     first == second ? "two full reruns compared equal"
                                     : "reruns differed"});
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

std::string reproduce_report() {
  const std::vector<CriterionResult> results = run_acceptance_criteria();
  int n_passed = 0;
  for (const CriterionResult& r : results) {
    n_passed += r.passed ? 1 : 0;
  }
  std::string out = serialize(results);
  out += "summary: ";
  out += std::to_string(n_passed);
  out += " of ";
  out += std::to_string(results.size());
  out += " criteria passed\n";
  return out;
}

}  // namespace cfode
