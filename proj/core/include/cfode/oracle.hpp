#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfode/ivp.hpp"

namespace cfode {

/*
 * Ground-truth machinery. D_t^alpha y = f(t, y) equals t^(1-alpha) dy/dt
 * wherever dy/dt exists, so the substitution
 *
 *     s = t^alpha / alpha,   t(s) = (alpha s)^(1/alpha)
 *
 * turns the fractional problem into the ordinary ODE dy/ds = f(t(s), y)
 * with no singularity at t = 0 (the naive form y' = t^(alpha-1) f has
 * one). The reference integrator, the closed-form catalog solutions and
 * the certification residuals all live on this identity.
 */

double s_of_t(double t, Alpha alpha);  // t^alpha / alpha; s_of_t(t, 1) == t exactly
double t_of_s(double s, Alpha alpha);  // inverse map; t_of_s(s, 1) == s exactly

// g(s, y) = f(t(s), y), the right-hand side of the transformed ODE.
// For alpha == 1 this returns f itself.
RhsFn transform_rhs(RhsFn f, Alpha alpha);

// Classical 4th-order one-step reference solution, reported on the
// uniform t-grid make_grid(a, b, n_output). Each output segment is
// integrated with `refinement` equal s-substeps, so the requested nodes
// are hit exactly and the result is deterministic.
Trajectory reference_solve(const IvpProblem& problem, int n_output, int refinement);

// The epsilon-quotient of the conformable derivative's definition:
// (f(t + eps t^(1-alpha)) - f(t)) / eps, for t > 0.
double cfd_limit_estimate(const std::function<double(double)>& f, double t, Alpha alpha,
                          double eps);

// |cfd_limit_estimate(exact, t, alpha, eps) - f(t, exact(t))|. Small
// values certify that `exact` solves D^alpha y = f(t, y) at t.
double cfd_residual(const Expr& exact, const Expr& rhs, Alpha alpha, double t, double eps);

struct NamedProblem {
  std::string name;
  std::map<std::string, double> params;
  IvpProblem problem;
};

// Test-problem families, all self-verifying through cfd_residual:
//
//   linear    D^a y = lambda y        y = y0 exp(lambda (t^a - t0^a)/a)
//   power     D^a y = p t^(p-a)       y = y0 + t^p - t0^p
//   logistic  D^a y = r y (1 - y/K)   y = K / (1 + C exp(-r t^a / a))
//   custom    rhs supplied as an expression, no exact form
//
// `params` may override a family's named parameters (linear: lambda;
// power: p; logistic: r, K); unknown names are rejected.
NamedProblem make_problem(const std::string& name, const std::map<std::string, double>& params,
                          Alpha alpha, double a, double b, double y0);

// Catalog defaults: alpha = 0.5 on [0, 1]; linear (lambda=1, y0=1),
// power (p=2, y0=0), logistic (r=1, K=2, y0=1), custom (f == 0, y0=1).
std::vector<NamedProblem> catalog();

}  // namespace cfode
