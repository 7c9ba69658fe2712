#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cfode/expr.hpp"

namespace cfode {

// Fractional order of the conformable derivative, restricted to (0, 1].
class Alpha {
public:
  explicit Alpha(double value);  // throws std::invalid_argument outside (0, 1]

  double value() const noexcept { return value_; }

private:
  double value_;
};

// t^a for t >= 0, computed as exp(a*log t) with the convention 0^a = 0.
// This single definition is used by every scheme and diagnostic so that
// runs are reproducible bit for bit.
double pow_alpha(double t, double a);

// Trajectories whose magnitude passes this bound are cut off and flagged.
inline constexpr double kDivergenceThreshold = 1e300;

// Right-hand side f(t, y) as a plain callable.
using RhsFn = std::function<double(double, double)>;

// Nodes t_k = t0 + k*h for 0 <= k <= n_steps.
class UniformGrid {
public:
  UniformGrid(double t0, double h, int n_steps);

  double t0() const noexcept { return t0_; }
  double h() const noexcept { return h_; }
  int n_steps() const noexcept { return n_steps_; }

  double node(int k) const;  // throws std::out_of_range
  double t_end() const { return node(n_steps_); }

private:
  double t0_;
  double h_;
  int n_steps_;
};

// Grid over [a, b] with h = (b - a)/n_steps. Rejects a < 0 (t^alpha must
// stay real-valued), b <= a, and n_steps < 1.
UniformGrid make_grid(double a, double b, int n_steps);

// The fractional initial value problem D_t^alpha y = f(t, y), y(a) = y0
// on [a, b], optionally carrying a closed-form solution y(t).
class IvpProblem {
public:
  IvpProblem(Expr rhs, double t_start, double t_end, double y0, Alpha alpha,
             std::optional<Expr> exact = std::nullopt);

  const Expr& rhs() const noexcept { return rhs_; }
  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  double y0() const noexcept { return y0_; }
  Alpha alpha() const noexcept { return alpha_; }
  const std::optional<Expr>& exact() const noexcept { return exact_; }

private:
  Expr rhs_;
  double t_start_;
  double t_end_;
  double y0_;
  Alpha alpha_;
  std::optional<Expr> exact_;
};

// Grid-aligned numeric solution. If the solution left [-threshold,
// threshold] or became non-finite, diverged_at holds the index of the
// first offending value; that value is kept (it is the interesting
// datum) and nothing beyond it is stored.
struct Trajectory {
  UniformGrid grid;
  std::vector<double> values;
  std::optional<int> diverged_at;

  bool diverged() const noexcept { return diverged_at.has_value(); }
};

}  // namespace cfode
