#include "grasslearn/optim.hpp"

#include <cmath>

namespace grasslearn {

void validate(const OptimConfig& config) {
  require_dim(config.max_iters >= 1, "optim config: max_iters must be >= 1");
  require_dim(config.grad_tol > 0.0, "optim config: grad_tol must be positive");
  require_dim(config.armijo_c > 0.0 && config.armijo_c < 1.0,
              "optim config: armijo_c must lie in (0, 1)");
  require_dim(config.backtrack > 0.0 && config.backtrack < 1.0,
              "optim config: backtrack must lie in (0, 1)");
  require_dim(config.init_step > 0.0, "optim config: init_step must be positive");
  require_dim(config.min_step > 0.0 && config.min_step <= config.init_step,
              "optim config: need 0 < min_step <= init_step");
}

std::string to_string(OptimStatus status) {
  switch (status) {
    case OptimStatus::Converged: return "converged";
    case OptimStatus::IterationCap: return "iteration_cap";
    case OptimStatus::StepUnderflow: return "step_underflow";
  }
  throw DimensionError("bad OptimStatus value");
}

TangentVector riemannian_grad(const Objective& objective, const GrassmannPoint& x) {
  return project_to_tangent(x, objective.euclidean_grad(x));
}

namespace {

double checked_value(const Objective& objective, const GrassmannPoint& x,
                     int iteration) {
  const double v = objective.value(x);
  if (!std::isfinite(v))
    throw ObjectiveEvalError("objective returned a non-finite value at iteration " +
                                 std::to_string(iteration),
                             x, iteration);
  return v;
}

}  // namespace

OptimResult minimize(const Objective& objective, const GrassmannPoint& init,
                     const OptimConfig& config) {
  validate(config);
  GrassmannPoint x = init;
  double fx = checked_value(objective, x, 0);

  std::vector<TracePoint> trace;
  trace.reserve(static_cast<size_t>(config.max_iters));
  OptimStatus status = OptimStatus::IterationCap;
  int iterations = 0;

  for (int it = 1; it <= config.max_iters; ++it) {
    const TangentVector grad = riemannian_grad(objective, x);
    const double gnorm = grad.norm();
    if (gnorm <= config.grad_tol) {
      status = OptimStatus::Converged;
      trace.push_back({fx, gnorm, 0.0});
      break;
    }

    double step = config.init_step;
    bool accepted = false;
    while (step >= config.min_step) {
      // exp(x, -step * grad); the geodesic retraction re-orthonormalizes
      // internally, so iterates stay orthonormal to machine precision.
      const GrassmannPoint candidate = exp_map(grad.scaled(-step));
      const double fc = checked_value(objective, candidate, it);
      if (fc <= fx - config.armijo_c * step * gnorm * gnorm) {
        x = candidate;
        fx = fc;
        accepted = true;
        break;
      }
      step *= config.backtrack;
    }
    if (!accepted) {
      status = OptimStatus::StepUnderflow;
      trace.push_back({fx, gnorm, 0.0});
      break;
    }
    iterations = it;
    trace.push_back({fx, gnorm, step});
  }

  return {std::move(x), fx, status, iterations, std::move(trace)};
}

}  // namespace grasslearn
