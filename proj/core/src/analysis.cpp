#include "cfode/analysis.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double implied_alpha(Alpha alpha, double t0, int k, double h) {
  assert(t0 >= 0.0 && k >= 1 && h > 0.0);
  const double exponent = 1.0 - alpha.value();
  if (t0 == 0.0) {
    return pow_alpha(static_cast<double>(k), exponent);  // the h^(1-alpha) factors cancel
  }
  return pow_alpha(t0 / h + static_cast<double>(k), exponent);
}

RatioDiagnostic ratio_sweep(Alpha alpha, double t0, int k, std::span<const double> h_values) {
  RatioDiagnostic diag{alpha.value(), t0, k, {}, false};
  diag.rows.reserve(h_values.size());
  for (double h : h_values) {
    assert(h > 0.0);
    diag.rows.push_back({h, implied_alpha(alpha, t0, k, h)});
  }
  if (alpha.value() < 1.0 && t0 != 0.0 && diag.rows.size() >= 2) {
    const RatioPoint& first = diag.rows.front();
    const RatioPoint& last = diag.rows.back();
    const double decades = std::log10(first.h / last.h);
    if (decades > 0.0 && first.implied_alpha > 0.0) {
      const double per_decade =
          std::exp(std::log(last.implied_alpha / first.implied_alpha) / decades);
      diag.unbounded_growth = per_decade >= 2.0;
    }
  }
  return diag;
}

std::vector<double> discrete_cfd(const Trajectory& traj, Alpha alpha) {
  if (traj.values.size() < 2) {
    throw std::invalid_argument("discrete_cfd needs at least two trajectory points");
  }
  const double a = alpha.value();
  std::vector<double> out;
  out.reserve(traj.values.size() - 1);
  for (std::size_t k = 0; k + 1 < traj.values.size(); ++k) {
    const double t_k = traj.grid.node(static_cast<int>(k));
    const double t_next = traj.grid.node(static_cast<int>(k) + 1);
    const double denom = pow_alpha(t_next, a) - pow_alpha(t_k, a);
    out.push_back(a * (traj.values[k + 1] - traj.values[k]) / denom);
  }
  return out;
}

ErrorNorms error_norms(const Trajectory& traj, const Expr& exact) {
  if (traj.diverged()) {
    return {kInf, kInf};
  }
  double max_err = 0.0;
  double final_err = 0.0;
  for (std::size_t k = 0; k < traj.values.size(); ++k) {
    const double t_k = traj.grid.node(static_cast<int>(k));
    final_err = std::abs(traj.values[k] - exact.eval(t_k, 0.0));
    max_err = std::max(max_err, final_err);
  }
  return {final_err, max_err};
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Converging:
      return "converging";
    case Verdict::NonConverging:
      return "non-converging";
    case Verdict::Diverged:
      return "diverged";
  }
  return "?";
}

ConvergenceReport convergence_study(const IvpProblem& problem, SchemeKind scheme, int n0,
                                    int levels, std::string problem_name) {
  if (n0 < 1) {
    throw std::invalid_argument("n0 must be positive");
  }
  if (levels < 3) {
    throw std::invalid_argument("a convergence study needs at least 3 levels");
  }

  ConvergenceReport report{scheme, std::move(problem_name), problem.alpha().value(), {}, {},
                           Verdict::NonConverging};
  report.rows.reserve(static_cast<std::size_t>(levels));

  for (int j = 0; j < levels; ++j) {
    const int n = n0 << j;
    const UniformGrid grid = make_grid(problem.t_start(), problem.t_end(), n);
    const Trajectory traj = solve(problem, grid, scheme);

    ErrorNorms norms{kInf, kInf};
    if (traj.diverged()) {
      // keep infinities
    } else if (problem.exact()) {
      norms = error_norms(traj, *problem.exact());
    } else {
      const Trajectory ref = reference_solve(problem, n, kSurrogateRefinement);
      if (!ref.diverged()) {
        double max_err = 0.0;
        double final_err = 0.0;
        for (std::size_t k = 0; k < traj.values.size(); ++k) {
          final_err = std::abs(traj.values[k] - ref.values[k]);
          max_err = std::max(max_err, final_err);
        }
        norms = {final_err, max_err};
      }
    }
    report.rows.push_back({n, grid.h(), norms.final_abs_err, norms.max_abs_err, traj.diverged()});
  }

  bool any_diverged = false;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const double prev = report.rows[i - 1].final_abs_err;
    const double cur = report.rows[i].final_abs_err;
    const bool usable = std::isfinite(prev) && std::isfinite(cur) && prev > 0.0 && cur > 0.0;
    report.orders.push_back(usable ? std::log2(prev / cur) : kNaN);
  }
  for (const ConvergenceRow& row : report.rows) {
    any_diverged = any_diverged || row.diverged;
  }

  if (any_diverged) {
    report.verdict = Verdict::Diverged;
  } else {
    const std::size_t n_orders = report.orders.size();
    bool in_band = n_orders >= 2;
    for (std::size_t i = n_orders - 2; in_band && i < n_orders; ++i) {
      const double order = report.orders[i];
      in_band = std::isfinite(order) && order >= kOrderBandLow && order <= kOrderBandHigh;
    }
    report.verdict = in_band ? Verdict::Converging : Verdict::NonConverging;
  }
  return report;
}

}  // namespace cfode
