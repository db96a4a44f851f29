#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "grasslearn/completion.hpp"
#include "grasslearn/datasets.hpp"
#include "util.hpp"

using namespace grasslearn;

TEST_SUITE("completion") {

TEST_CASE("make_masked validates mask entries and observed values") {
  Matrix values = Matrix::Ones(2, 2);
  Matrix mask = Matrix::Ones(2, 2);
  CHECK_NOTHROW(make_masked(values, mask));

  Matrix half = mask;
  half(0, 1) = 0.5;
  CHECK_THROWS_WITH_AS(make_masked(values, half), doctest::Contains("(0,1)"),
                       DataError);

  Matrix bad_values = values;
  bad_values(1, 0) = std::nan("");
  CHECK_THROWS_AS(make_masked(bad_values, mask), DataError);

  // A hidden entry may hold anything; it is zeroed on use.
  Matrix hidden = values;
  hidden(1, 0) = std::nan("");
  Matrix open = mask;
  open(1, 0) = 0.0;
  const MaskedMatrix m = make_masked(hidden, open);
  const Matrix filled = mask_apply(m);
  CHECK(filled(1, 0) == 0.0);
  CHECK(filled(0, 0) == 1.0);

  CHECK_THROWS_AS(make_masked(values, Matrix::Ones(3, 2)), DimensionError);
}

TEST_CASE("the frobenius objective vanishes on the generating subspace") {
  const CompletionInstance inst = low_rank_masked(12, 8, 2, 1.0, 51);
  const GrassmannPoint span2 =
      GrassmannPoint::from_orthonormal(svd_compact(inst.truth).u.leftCols(2));
  const FrobeniusEval at_truth = objective_frobenius(span2, inst.masked);
  CHECK(at_truth.value < 1e-18);
  CHECK(at_truth.underdetermined.empty());
  REQUIRE(at_truth.w.rows() == 8);
  REQUIRE(at_truth.w.cols() == 2);
  CHECK((span2.basis() * at_truth.w.transpose() - inst.truth).norm() < 1e-8);

  Rng rng(52);
  const FrobeniusEval elsewhere =
      objective_frobenius(random_point(12, 2, rng), inst.masked);
  CHECK(elsewhere.value > at_truth.value);
}

TEST_CASE("columns with too few observations are reported, not fatal") {
  Matrix values = Matrix::Ones(4, 2);
  Matrix mask = Matrix::Ones(4, 2);
  mask.col(1).setZero();
  mask(0, 1) = 1.0;  // one observation against rank 2
  const MaskedMatrix m = make_masked(values, mask);
  Rng rng(53);
  const FrobeniusEval eval = objective_frobenius(random_point(4, 2, rng), m);
  REQUIRE(eval.underdetermined.size() == 1);
  CHECK(eval.underdetermined[0] == 1);
  CHECK(std::isfinite(eval.value));
}

TEST_CASE("the projection objective stays finite along geodesic sweeps") {
  const CompletionInstance inst = low_rank_masked(20, 15, 3, 0.6, 7);
  Rng rng(54);
  const GrassmannPoint a = random_point(20, 3, rng);
  const GrassmannPoint b = random_point(20, 3, rng);
  const TangentVector dir = log_map(a, b);
  for (int i = 0; i <= 200; ++i) {
    const double v =
        objective_projection(geodesic_point(dir, i / 200.0), inst.masked);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v <= 15.0 + 1e-12);
  }
}

TEST_CASE("objective names parse both ways") {
  CHECK(completion_objective_from_string("frobenius") ==
        CompletionObjective::Frobenius);
  CHECK(completion_objective_from_string("projection") ==
        CompletionObjective::Projection);
  CHECK(to_string(CompletionObjective::Frobenius) == "frobenius");
  CHECK_THROWS_AS(completion_objective_from_string("nuclear"), DataError);
}

TEST_CASE("multi-start completion recovers a seeded low-rank matrix") {
  const CompletionInstance inst = low_rank_masked(20, 15, 3, 0.6, 7);
  CompletionConfig config;
  Rng rng(7);
  const CompletionResult r = complete(inst.masked, 3, config, rng);
  const double rel = (r.completed - inst.truth).norm() / inst.truth.norm();
  CHECK(rel <= 1e-3);
  REQUIRE(r.restart_values.size() == 5);
  CHECK(r.best_restart >= 0);
  CHECK(r.best_restart < 5);
  CHECK(r.residual ==
        *std::min_element(r.restart_values.begin(), r.restart_values.end()));
  CHECK((r.u.basis() * r.w.transpose() - r.completed).norm() == 0.0);
  CHECK_FALSE(r.trace.empty());
}

TEST_CASE("single runs are deterministic in their seed") {
  const CompletionInstance inst = low_rank_masked(15, 10, 2, 0.7, 55);
  CompletionConfig config;
  const CompletionResult a = complete_one(inst.masked, 2, config, 42);
  const CompletionResult b = complete_one(inst.masked, 2, config, 42);
  CHECK(a.residual == b.residual);
  CHECK((a.completed - b.completed).norm() == 0.0);
  const CompletionResult c = complete_one(inst.masked, 2, config, 43);
  CHECK((a.u.basis() - c.u.basis()).norm() > 0.0);
}

TEST_CASE("ranks outside the shape are rejected") {
  const CompletionInstance inst = low_rank_masked(6, 4, 2, 0.9, 56);
  CompletionConfig config;
  Rng rng(56);
  CHECK_THROWS_AS(complete(inst.masked, 5, config, rng), DimensionError);
  CHECK_THROWS_AS(complete(inst.masked, 0, config, rng), DimensionError);
  config.restarts = 0;
  CHECK_THROWS_AS(complete(inst.masked, 2, config, rng), DimensionError);
}

}  // TEST_SUITE
