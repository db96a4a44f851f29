#include <doctest.h>

#include <cmath>
#include <vector>

#include "grasslearn/datasets.hpp"
#include "grasslearn/grnet.hpp"
#include "util.hpp"

using namespace grasslearn;
using grasslearn::testing::ortho_defect;
using grasslearn::testing::random_rotation;

namespace {

GrNetDims toy_dims() {
  GrNetDims dims;
  dims.n = 8;
  dims.k_in = 2;
  dims.m = 6;
  dims.d = 2;
  dims.classes = 2;
  dims.filters = 2;
  return dims;
}

LabeledGrassmannSet toy_data(uint64_t seed) {
  return labeled_subspaces(2, 10, 8, 2, 0.2, seed).set;
}

}  // namespace

TEST_SUITE("grnet") {

TEST_CASE("dimension validation catches every inconsistency") {
  GrNetDims dims = toy_dims();
  CHECK_NOTHROW(validate(dims));
  dims.m = 1;  // below k_in
  CHECK_THROWS_AS(validate(dims), DimensionError);
  dims = toy_dims();
  dims.d = 7;  // above m
  CHECK_THROWS_AS(validate(dims), DimensionError);
  dims = toy_dims();
  dims.classes = 1;
  CHECK_THROWS_AS(validate(dims), DimensionError);
  dims = toy_dims();
  dims.filters = 0;
  CHECK_THROWS_AS(validate(dims), DimensionError);
  dims = toy_dims();
  dims.k_in = 9;  // above n
  CHECK_THROWS_AS(validate(dims), DimensionError);
}

TEST_CASE("initialization is seeded and correctly shaped") {
  Rng a(81), b(81);
  const GrNetParams pa = grnet_init(toy_dims(), a);
  const GrNetParams pb = grnet_init(toy_dims(), b);
  REQUIRE(pa.filters.size() == 2);
  CHECK(pa.filters[0].rows() == 6);
  CHECK(pa.filters[0].cols() == 8);
  CHECK(pa.fc.rows() == 6 * 7 / 2 + 1);
  CHECK(pa.fc.cols() == 2);
  CHECK((pa.fc - pb.fc).norm() == 0.0);
  CHECK((pa.filters[1] - pb.filters[1]).norm() == 0.0);
  CHECK(pa.class_labels == std::vector<int>{0, 1});
}

TEST_CASE("forward activations live on the right manifolds") {
  Rng rng(82);
  const GrNetParams params = grnet_init(toy_dims(), rng);
  const GrassmannPoint x = random_point(8, 2, rng);
  const GrNetActivation act = grnet_forward(params, x);
  REQUIRE(act.q.size() == 2);
  for (const Matrix& q : act.q) {
    CHECK(q.rows() == 6);
    CHECK(q.cols() == 2);
    CHECK(ortho_defect(q) < 1e-10);
  }
  CHECK(ortho_defect(act.u) < 1e-10);
  CHECK((act.final_proj - act.u * act.u.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(act.final_proj.trace() == doctest::Approx(2.0).epsilon(1e-10));
  // The scaled upper triangle is an isometric embedding of the projector.
  CHECK(act.features.squaredNorm() ==
        doctest::Approx(act.final_proj.squaredNorm()).epsilon(1e-10));
  CHECK(act.logits.size() == 2);
  // Pooling averages projectors, so eigenvalues sit in [0, 1].
  const Vector pooled_eigs = sym_eig(act.pooled).values;
  CHECK(pooled_eigs(0) >= -1e-10);
  CHECK(pooled_eigs(5) <= 1.0 + 1e-10);
}

TEST_CASE("logits are invariant to the input representative") {
  Rng rng(83);
  const GrNetParams params = grnet_init(toy_dims(), rng);
  for (int rep = 0; rep < 5; ++rep) {
    const GrassmannPoint x = random_point(8, 2, rng);
    const GrassmannPoint xr =
        GrassmannPoint::from_orthonormal(x.basis() * random_rotation(2, rng));
    const Vector la = grnet_forward(params, x).logits;
    const Vector lb = grnet_forward(params, xr).logits;
    CHECK((la - lb).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("zero head weights give the uniform cross entropy exactly") {
  Rng rng(84);
  GrNetParams params = grnet_init(toy_dims(), rng);
  params.fc.setZero();
  const LabeledGrassmannSet data = toy_data(84);
  CHECK(grnet_loss(params, data) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("finite-difference gradients pass a step-halving consistency check") {
  Rng rng(85);
  GrNetDims dims = toy_dims();
  dims.filters = 1;
  const GrNetParams params = grnet_init(dims, rng);
  LabeledGrassmannSet data;
  for (int i = 0; i < 6; ++i) {
    data.points.push_back(random_point(8, 2, rng));
    data.labels.push_back(i % 2);
  }
  // Central differences carry an O(h^2) bias, so successive halvings shrink
  // the difference against the next refinement by about 4.
  for (const auto& p : data.points) {
    const GrNetActivation act = grnet_forward(params, p);
    REQUIRE(act.eigengap >= 0.1);
    REQUIRE_FALSE(act.gap_warning);
  }
  const double h = 1e-2;
  const Vector g1 = grnet_fd_gradient(params, data, h);
  const Vector g2 = grnet_fd_gradient(params, data, h / 2);
  const Vector g4 = grnet_fd_gradient(params, data, h / 4);
  const double ratio = (g1 - g2).norm() / (g2 - g4).norm();
  CHECK(ratio > 2.5);
  CHECK(ratio < 6.0);
}

TEST_CASE("training a toy problem reaches high accuracy monotonically") {
  const LabeledGrassmannSet data = toy_data(29);
  GrNetDims dims = toy_dims();
  dims.filters = 1;
  Rng rng(29);
  const GrNetParams initial = grnet_init(dims, rng);
  GrNetTrainConfig config;
  config.epochs = 20;
  const GrNetTrainResult r = grnet_train(initial, data, config);
  REQUIRE(r.loss_trace.size() >= 2);
  double running = r.loss_trace.front();
  for (double v : r.loss_trace) {
    // The trace records the accepted loss, which never rises.
    CHECK(v <= running + 1e-12);
    running = std::min(running, v);
  }
  CHECK(r.best_loss == doctest::Approx(running));
  CHECK(r.best_loss < r.loss_trace.front());
  CHECK(grnet_accuracy(r.params, data) >= 0.8);
}

TEST_CASE("predictions use the stored label values") {
  const LabeledGrassmannSet base = toy_data(86);
  LabeledGrassmannSet shifted = base;
  for (int& l : shifted.labels) l = l == 0 ? 3 : 7;
  GrNetDims dims = toy_dims();
  dims.filters = 1;
  Rng rng(86);
  GrNetParams initial = grnet_init(dims, rng);
  initial.class_labels = {3, 7};
  GrNetTrainConfig config;
  config.epochs = 5;
  const GrNetTrainResult r = grnet_train(initial, shifted, config);
  const std::vector<int> predicted = grnet_predict(r.params, shifted.points);
  for (int p : predicted) CHECK((p == 3 || p == 7));
}

TEST_CASE("forward rejects inputs from the wrong grassmannian") {
  Rng rng(87);
  const GrNetParams params = grnet_init(toy_dims(), rng);
  CHECK_THROWS_AS(grnet_forward(params, random_point(8, 3, rng)), DimensionError);
  CHECK_THROWS_AS(grnet_forward(params, random_point(7, 2, rng)), DimensionError);
}

}  // TEST_SUITE
