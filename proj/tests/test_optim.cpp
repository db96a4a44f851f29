#include <doctest.h>

#include <cmath>
#include <limits>

#include "grasslearn/optim.hpp"
#include "util.hpp"

using namespace grasslearn;

namespace {

// F(X) = -tr(X^T A X); minimized by the top-k eigenspace of A.
struct NegTrace : Objective {
  explicit NegTrace(Matrix a) : a(std::move(a)) {}
  double value(const GrassmannPoint& x) const override {
    return -(x.basis().transpose() * a * x.basis()).trace();
  }
  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    return -2.0 * a * x.basis();
  }
  Matrix a;
};

struct FlatWithFakeGrad : Objective {
  double value(const GrassmannPoint&) const override { return 0.0; }
  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    return Matrix::Constant(x.n(), x.k(), 1.0);
  }
};

struct NanObjective : Objective {
  double value(const GrassmannPoint&) const override {
    return std::numeric_limits<double>::quiet_NaN();
  }
  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    return Matrix::Zero(x.n(), x.k());
  }
};

Matrix descending_diag(Index n) {
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = static_cast<double>(n - i);
  return Matrix(d.asDiagonal());
}

}  // namespace

TEST_SUITE("optim") {

TEST_CASE("riemannian gradients are horizontal") {
  Rng rng(31);
  const NegTrace f(descending_diag(7));
  for (int rep = 0; rep < 10; ++rep) {
    const GrassmannPoint x = random_point(7, 3, rng);
    const TangentVector g = riemannian_grad(f, x);
    CHECK((x.basis().transpose() * g.delta()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("directional derivatives match central differences along geodesics") {
  Rng rng(32);
  const NegTrace f(descending_diag(6));
  const double h = 1e-5;
  for (int rep = 0; rep < 10; ++rep) {
    const GrassmannPoint x = random_point(6, 2, rng);
    TangentVector dir = project_to_tangent(x, random_gaussian(6, 2, rng));
    dir = dir.scaled(1.0 / dir.norm());
    const TangentVector g = riemannian_grad(f, x);
    const double analytic = (g.delta().array() * dir.delta().array()).sum();
    const double fd =
        (f.value(exp_map(dir.scaled(h))) - f.value(exp_map(dir.scaled(-h)))) /
        (2 * h);
    // Central differences are O(h^2); allow a generous constant.
    CHECK(std::abs(analytic - fd) < 1e-8 * (1.0 + std::abs(analytic)));
  }
}

TEST_CASE("the optimizer finds the dominant eigenspace of a diagonal matrix") {
  const NegTrace f(descending_diag(6));
  Rng rng(33);
  const OptimResult r = minimize(f, random_point(6, 2, rng));
  CHECK(r.status == OptimStatus::Converged);
  CHECK(r.iterations <= 500);
  CHECK(std::abs(r.value - (-11.0)) < 1e-6);
  const GrassmannPoint target =
      GrassmannPoint::from_orthonormal(Matrix::Identity(6, 2));
  CHECK(distance(DistanceMetric::Projection, r.x, target) < 1e-5);
}

TEST_CASE("accepted objective values never increase") {
  const NegTrace f(descending_diag(8));
  Rng rng(34);
  const OptimResult r = minimize(f, random_point(8, 3, rng));
  REQUIRE(r.trace.size() >= 2);
  for (size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].value <= r.trace[i - 1].value + 1e-15);
  CHECK(r.trace.back().grad_norm <= 1e-6);
}

TEST_CASE("hitting the iteration cap is a status, not an error") {
  const NegTrace f(descending_diag(6));
  OptimConfig config;
  config.max_iters = 1;
  Rng rng(35);
  const OptimResult r = minimize(f, random_point(6, 2, rng), config);
  CHECK(r.status == OptimStatus::IterationCap);
  CHECK(r.iterations == 1);
}

TEST_CASE("armijo failure all the way to min_step reports step underflow") {
  const FlatWithFakeGrad f;
  Rng rng(36);
  const OptimResult r = minimize(f, random_point(5, 2, rng));
  CHECK(r.status == OptimStatus::StepUnderflow);
  CHECK(r.value == 0.0);
}

TEST_CASE("non-finite objective values throw with the offending iterate") {
  const NanObjective f;
  Rng rng(37);
  const GrassmannPoint x0 = random_point(4, 2, rng);
  try {
    minimize(f, x0);
    FAIL("expected ObjectiveEvalError");
  } catch (const ObjectiveEvalError& e) {
    CHECK(e.iteration == 0);
    CHECK((e.iterate.basis() - x0.basis()).norm() == 0.0);
  }
}

TEST_CASE("config validation names the broken field") {
  OptimConfig config;
  config.max_iters = 0;
  CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("max_iters"),
                       DimensionError);
  config = {};
  config.grad_tol = 0.0;
  CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("grad_tol"),
                       DimensionError);
  config = {};
  config.armijo_c = 1.0;
  CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("armijo_c"),
                       DimensionError);
  config = {};
  config.backtrack = 0.0;
  CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("backtrack"),
                       DimensionError);
  config = {};
  config.min_step = 2.0;
  CHECK_THROWS_AS(validate(config), DimensionError);
  CHECK_NOTHROW(validate(OptimConfig{}));
}

TEST_CASE("status names round-trip through to_string") {
  CHECK(to_string(OptimStatus::Converged) == "converged");
  CHECK(to_string(OptimStatus::IterationCap) == "iteration_cap");
  CHECK(to_string(OptimStatus::StepUnderflow) == "step_underflow");
}

}  // TEST_SUITE
