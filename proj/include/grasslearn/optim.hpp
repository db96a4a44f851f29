#pragma once

#include <vector>

#include "grasslearn/manifold.hpp"

namespace grasslearn {

// A smooth function of the generator together with its plain matrix-calculus
// gradient dF/dX. The Riemannian gradient is obtained by projecting that
// matrix onto the horizontal tangent space.
struct Objective {
  virtual ~Objective() = default;
  virtual double value(const GrassmannPoint& x) const = 0;
  virtual Matrix euclidean_grad(const GrassmannPoint& x) const = 0;
};

struct OptimConfig {
  int max_iters = 500;
  double grad_tol = 1e-6;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double init_step = 1.0;
  double min_step = 1e-12;
};

void validate(const OptimConfig& config);

enum class OptimStatus { Converged, IterationCap, StepUnderflow };

std::string to_string(OptimStatus status);

struct TracePoint {
  double value;
  double grad_norm;
  double step;
};

struct OptimResult {
  GrassmannPoint x;
  double value;
  OptimStatus status;
  int iterations;
  std::vector<TracePoint> trace;
};

// Thrown when the objective produces NaN or Inf; carries the iterate.
struct ObjectiveEvalError : NumericalError {
  ObjectiveEvalError(const std::string& msg, GrassmannPoint at, int iteration)
      : NumericalError(msg), iterate(std::move(at)), iteration(iteration) {}
  GrassmannPoint iterate;
  int iteration;
};

TangentVector riemannian_grad(const Objective& objective, const GrassmannPoint& x);

// Steepest descent along exact geodesics with Armijo backtracking. Iterates
// stay orthonormal; the retraction re-orthonormalizes when drift exceeds
// 1e-12. Accepted objective values never increase.
OptimResult minimize(const Objective& objective, const GrassmannPoint& init,
                     const OptimConfig& config = {});

}  // namespace grasslearn
