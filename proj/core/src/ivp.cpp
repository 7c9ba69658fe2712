#include "cfode/ivp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfode {

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {  // also rejects NaN
    throw std::invalid_argument("alpha must lie in (0, 1], got " + std::to_string(value));
  }
}

double pow_alpha(double t, double a) {
  if (t == 0.0) return 0.0;
  return std::exp(a * std::log(t));
}

UniformGrid::UniformGrid(double t0, double h, int n_steps) : t0_(t0), h_(h), n_steps_(n_steps) {
  if (!(t0 >= 0.0) || !std::isfinite(t0)) {
    throw std::invalid_argument("grid origin must be finite and nonnegative");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("grid step must be finite and positive");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("grid needs at least one step");
  }
}

double UniformGrid::node(int k) const {
  if (k < 0 || k > n_steps_) {
    throw std::out_of_range("grid node index " + std::to_string(k) + " outside [0, " +
                            std::to_string(n_steps_) + "]");
  }
  return t0_ + static_cast<double>(k) * h_;
}

UniformGrid make_grid(double a, double b, int n_steps) {
  if (!(a >= 0.0)) {
    throw std::invalid_argument("interval start must be nonnegative");
  }
  if (!(b > a)) {
    throw std::invalid_argument("interval end must exceed its start");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("need at least one step");
  }
  return UniformGrid(a, (b - a) / static_cast<double>(n_steps), n_steps);
}

IvpProblem::IvpProblem(Expr rhs, double t_start, double t_end, double y0, Alpha alpha,
                       std::optional<Expr> exact)
    : rhs_(std::move(rhs)),
      t_start_(t_start),
      t_end_(t_end),
      y0_(y0),
      alpha_(alpha),
      exact_(std::move(exact)) {
  if (!(t_start >= 0.0) || !(t_end > t_start) || !std::isfinite(t_end)) {
    throw std::invalid_argument("problem interval must satisfy 0 <= a < b");
  }
  if (!std::isfinite(y0)) {
    throw std::invalid_argument("initial value must be finite");
  }
  if (exact_) {
    const double at_start = exact_->eval(t_start_, 0.0);
    const double scale = std::max(std::abs(y0_), 1.0);
    if (!(std::abs(at_start - y0_) <= 1e-12 * scale)) {
      throw std::invalid_argument("exact solution does not match y0 at t_start");
    }
  }
}

}  // namespace cfode
