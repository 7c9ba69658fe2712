#pragma once

#include <optional>
#include <string_view>

#include "cfode/ivp.hpp"

namespace cfode {

enum class SchemeKind {
  ConformableEuler,          // y_{k+1} = y_k + (1/alpha) h^alpha f(t_k, y_k)
  ModifiedConformableEuler,  // y_{k+1} = y_k + (1/alpha) (t_{k+1}^alpha - t_k^alpha) f(t_k, y_k)
  ClassicalEuler,            // y_{k+1} = y_k + h f(t_k, y_k); ignores alpha
};

// CLI spellings: "conformable-euler", "modified", "classical".
std::string_view to_string(SchemeKind kind);
std::optional<SchemeKind> scheme_from_string(std::string_view name);

// One explicit step of each method. f is always evaluated at the left
// node (t_k, y_k); a non-finite result is the caller's concern.
double conformable_euler_step(double t_k, double h, double y_k, const RhsFn& f, Alpha alpha);
double modified_euler_step(double t_k, double t_next, double y_k, const RhsFn& f, Alpha alpha);

// March the scheme across the grid. Stops early, recording diverged_at,
// as soon as a value leaves [-kDivergenceThreshold, kDivergenceThreshold]
// or becomes non-finite; divergent runs are results, not errors.
Trajectory solve(const RhsFn& f, double y0, Alpha alpha, const UniformGrid& grid,
                 SchemeKind scheme);

// Same, reading f, y0 and alpha from the problem. The grid must span
// [t_start, t_end] of the problem.
Trajectory solve(const IvpProblem& problem, const UniformGrid& grid, SchemeKind scheme);

}  // namespace cfode
