#include "cfode/schemes.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cfode {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::ConformableEuler:
      return "conformable-euler";
    case SchemeKind::ModifiedConformableEuler:
      return "modified";
    case SchemeKind::ClassicalEuler:
      return "classical";
  }
  return "?";
}

std::optional<SchemeKind> scheme_from_string(std::string_view name) {
  if (name == "conformable-euler") return SchemeKind::ConformableEuler;
  if (name == "modified") return SchemeKind::ModifiedConformableEuler;
  if (name == "classical") return SchemeKind::ClassicalEuler;
  return std::nullopt;
}

double conformable_euler_step(double t_k, double h, double y_k, const RhsFn& f, Alpha alpha) {
  assert(h > 0.0);
  const double a = alpha.value();
  return y_k + pow_alpha(h, a) / a * f(t_k, y_k);
}

double modified_euler_step(double t_k, double t_next, double y_k, const RhsFn& f, Alpha alpha) {
  assert(t_k >= 0.0 && t_next > t_k);
  const double a = alpha.value();
  return y_k + (pow_alpha(t_next, a) - pow_alpha(t_k, a)) / a * f(t_k, y_k);
}

Trajectory solve(const RhsFn& f, double y0, Alpha alpha, const UniformGrid& grid,
                 SchemeKind scheme) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.n_steps()) + 1);
  values.push_back(y0);

  std::optional<int> diverged_at;
  double y = y0;
  for (int k = 0; k < grid.n_steps(); ++k) {
    const double t_k = grid.node(k);
    double next = 0.0;
    switch (scheme) {
      case SchemeKind::ConformableEuler:
        next = conformable_euler_step(t_k, grid.h(), y, f, alpha);
        break;
      case SchemeKind::ModifiedConformableEuler:
        next = modified_euler_step(t_k, grid.node(k + 1), y, f, alpha);
        break;
      case SchemeKind::ClassicalEuler:
        next = y + grid.h() * f(t_k, y);
        break;
    }
    values.push_back(next);
    if (!std::isfinite(next) || std::abs(next) > kDivergenceThreshold) {
      diverged_at = k + 1;
      break;
    }
    y = next;
  }
  return Trajectory{grid, std::move(values), diverged_at};
}

Trajectory solve(const IvpProblem& problem, const UniformGrid& grid, SchemeKind scheme) {
  const double span = problem.t_end() - problem.t_start();
  if (std::abs(grid.t0() - problem.t_start()) > 1e-12 * span ||
      std::abs(grid.t_end() - problem.t_end()) > 1e-12 * span) {
    throw std::invalid_argument("grid does not span the problem interval");
  }
  const Expr rhs = problem.rhs();
  return solve([rhs](double t, double y) { return rhs.eval(t, y); }, problem.y0(),
               problem.alpha(), grid, scheme);
}

}  // namespace cfode
