#pragma once

#include <span>
#include <string>
#include <vector>

#include "cfode/oracle.hpp"
#include "cfode/schemes.hpp"

namespace cfode {

// The consistency condition of the original conformable Euler method
// reads alpha = (t0/h + k)^(1-alpha) (or alpha = k^(1-alpha) when
// t0 = 0). implied_alpha evaluates that right-hand side; any h- or
// k-dependence falsifies the method for alpha < 1.
double implied_alpha(Alpha alpha, double t0, int k, double h);

struct RatioPoint {
  double h;
  double implied_alpha;
};

struct RatioDiagnostic {
  double alpha;
  double t0;
  int k;
  std::vector<RatioPoint> rows;
  // True when alpha < 1, t0 != 0 and the sweep grew by at least a factor
  // of 2 per decade of h, the signature of (t0/h + k)^(1-alpha) -> inf.
  bool unbounded_growth = false;
};

// implied_alpha over a decreasing list of step sizes. k is held fixed
// while h shrinks; tying k to a fixed time instead (k = (t - t0)/h) is a
// different experiment and is not offered here.
RatioDiagnostic ratio_sweep(Alpha alpha, double t0, int k, std::span<const double> h_values);

// Discrete conformable derivative along a trajectory:
// d_k = alpha (y_{k+1} - y_k) / (t_{k+1}^alpha - t_k^alpha).
std::vector<double> discrete_cfd(const Trajectory& traj, Alpha alpha);

struct ErrorNorms {
  double final_abs_err;
  double max_abs_err;
};

// |y_N - exact(t_N)| and the maximum over all nodes. Divergent
// trajectories report infinity for both.
ErrorNorms error_norms(const Trajectory& traj, const Expr& exact);

enum class Verdict { Converging, NonConverging, Diverged };

std::string_view to_string(Verdict verdict);

struct ConvergenceRow {
  int n_steps;
  double h;
  double final_abs_err;
  double max_abs_err;
  bool diverged;
};

struct ConvergenceReport {
  SchemeKind scheme;
  std::string problem;
  double alpha;
  std::vector<ConvergenceRow> rows;       // h halves from row to row
  std::vector<double> orders;             // log2(err(h)/err(h/2)) of final errors;
                                          // NaN where a ratio is undefined
  Verdict verdict;
};

inline constexpr double kOrderBandLow = 0.75;
inline constexpr double kOrderBandHigh = 1.25;
inline constexpr int kSurrogateRefinement = 1024;

// Solve at N = n0 * 2^j for j = 0 .. levels-1 and estimate the empirical
// order from consecutive final errors. Errors are measured against the
// problem's exact solution when present, otherwise against
// reference_solve at kSurrogateRefinement. Verdict: Diverged if any
// level diverged; Converging if both of the last two order estimates lie
// in [0.75, 1.25]; NonConverging otherwise.
ConvergenceReport convergence_study(const IvpProblem& problem, SchemeKind scheme, int n0,
                                    int levels, std::string problem_name = "custom");

}  // namespace cfode
