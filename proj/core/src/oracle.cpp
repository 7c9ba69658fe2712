#include "cfode/oracle.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cfode/schemes.hpp"

namespace cfode {

namespace {

// Shortest round-trip form, used to splice numeric parameters into
// expression source text.
std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return "(" + std::string(buf, ptr) + ")";
}

double rk4_step(const RhsFn& g, double s, double y, double h) {
  const double k1 = g(s, y);
  const double k2 = g(s + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = g(s + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = g(s + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                     double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown_params(const std::map<std::string, double>& params,
                           std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (std::string_view k : known) {
      if (key == k) ok = true;
    }
    if (!ok) {
      throw std::invalid_argument("unknown parameter '" + key + "'");
    }
  }
}

}  // namespace

double s_of_t(double t, Alpha alpha) {
  const double a = alpha.value();
  if (a == 1.0) return t;
  return pow_alpha(t, a) / a;
}

double t_of_s(double s, Alpha alpha) {
  const double a = alpha.value();
  if (a == 1.0) return s;
  if (s == 0.0) return 0.0;
  assert(s > 0.0);
  return std::exp(std::log(a * s) / a);
}

RhsFn transform_rhs(RhsFn f, Alpha alpha) {
  if (alpha.value() == 1.0) return f;
  return [f = std::move(f), alpha](double s, double y) { return f(t_of_s(s, alpha), y); };
}

Trajectory reference_solve(const IvpProblem& problem, int n_output, int refinement) {
  if (n_output < 1) {
    throw std::invalid_argument("n_output must be positive");
  }
  if (refinement < 1) {
    throw std::invalid_argument("refinement must be positive");
  }
  const UniformGrid out = make_grid(problem.t_start(), problem.t_end(), n_output);
  const Expr rhs = problem.rhs();
  const RhsFn g =
      transform_rhs([rhs](double t, double y) { return rhs.eval(t, y); }, problem.alpha());

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_output) + 1);
  values.push_back(problem.y0());

  std::optional<int> diverged_at;
  double y = problem.y0();
  for (int j = 0; j < n_output && !diverged_at; ++j) {
    const double s_lo = s_of_t(out.node(j), problem.alpha());
    const double s_hi = s_of_t(out.node(j + 1), problem.alpha());
    const double hs = (s_hi - s_lo) / static_cast<double>(refinement);
    for (int i = 0; i < refinement; ++i) {
      y = rk4_step(g, s_lo + static_cast<double>(i) * hs, y, hs);
    }
    values.push_back(y);
    if (!std::isfinite(y) || std::abs(y) > kDivergenceThreshold) {
      diverged_at = j + 1;
    }
  }
  return Trajectory{out, std::move(values), diverged_at};
}

double cfd_limit_estimate(const std::function<double(double)>& f, double t, Alpha alpha,
                          double eps) {
  assert(t > 0.0 && eps > 0.0);
  const double offset = eps * pow_alpha(t, 1.0 - alpha.value());
  return (f(t + offset) - f(t)) / eps;
}

double cfd_residual(const Expr& exact, const Expr& rhs, Alpha alpha, double t, double eps) {
  const auto y_of_t = [&exact](double u) { return exact.eval(u, 0.0); };
  const double estimate = cfd_limit_estimate(y_of_t, t, alpha, eps);
  return std::abs(estimate - rhs.eval(t, y_of_t(t)));
}

NamedProblem make_problem(const std::string& name, const std::map<std::string, double>& params,
                          Alpha alpha, double a, double b, double y0) {
  const double al = alpha.value();
  const std::string t_pow_alpha = "t^" + num(al);

  if (name == "linear") {
    reject_unknown_params(params, {"lambda"});
    const double lambda = param_or(params, "lambda", 1.0);
    const Expr rhs = Expr::parse(num(lambda) + "*y");
    // y = y0 exp(lambda (t^alpha - a^alpha)/alpha)
    const Expr exact = Expr::parse(num(y0) + "*exp(" + num(lambda) + "*(" + t_pow_alpha + "-" +
                                   num(pow_alpha(a, al)) + ")/" + num(al) + ")");
    return NamedProblem{name, {{"lambda", lambda}}, IvpProblem(rhs, a, b, y0, alpha, exact)};
  }

  if (name == "power") {
    reject_unknown_params(params, {"p"});
    const double p = param_or(params, "p", 2.0);
    const Expr rhs = Expr::parse(num(p) + "*t^" + num(p - al));
    // y = y0 + t^p - a^p
    const Expr exact =
        Expr::parse(num(y0) + "+t^" + num(p) + "-" + num(pow_alpha(a, p)));
    return NamedProblem{name, {{"p", p}}, IvpProblem(rhs, a, b, y0, alpha, exact)};
  }

  if (name == "logistic") {
    reject_unknown_params(params, {"r", "K"});
    const double r = param_or(params, "r", 1.0);
    const double cap = param_or(params, "K", 2.0);
    if (y0 == 0.0 || cap == 0.0) {
      throw std::invalid_argument("logistic problem needs y0 != 0 and K != 0");
    }
    const Expr rhs = Expr::parse(num(r) + "*y*(1-y/" + num(cap) + ")");
    // y = K/(1 + C exp(-r s(t))), s(t) = t^alpha/alpha, C fixed by y(a) = y0
    const double c = (cap / y0 - 1.0) * std::exp(r * s_of_t(a, alpha));
    const Expr exact = Expr::parse(num(cap) + "/(1+" + num(c) + "*exp(" + num(-r) + "*" +
                                   t_pow_alpha + "/" + num(al) + "))");
    return NamedProblem{name, {{"K", cap}, {"r", r}}, IvpProblem(rhs, a, b, y0, alpha, exact)};
  }

  if (name == "custom") {
    reject_unknown_params(params, {});
    return NamedProblem{name, {}, IvpProblem(Expr::parse("0"), a, b, y0, alpha)};
  }

  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<NamedProblem> catalog() {
  const Alpha half(0.5);
  std::vector<NamedProblem> entries;
  entries.push_back(make_problem("linear", {}, half, 0.0, 1.0, 1.0));
  entries.push_back(make_problem("power", {}, half, 0.0, 1.0, 0.0));
  entries.push_back(make_problem("logistic", {}, half, 0.0, 1.0, 1.0));
  entries.push_back(make_problem("custom", {}, half, 0.0, 1.0, 1.0));
  return entries;
}

}  // namespace cfode
