#include <doctest.h>

#include <cmath>

#include "grasslearn/adapt.hpp"
#include "grasslearn/datasets.hpp"
#include "util.hpp"

using namespace grasslearn;

namespace {

GrassmannPoint line(double x, double y) {
  Matrix m(2, 1);
  m << x, y;
  return GrassmannPoint::from_matrix(m);
}

}  // namespace

TEST_SUITE("adapt") {

TEST_CASE("pca_subspace recovers an exact low-dimensional plane") {
  Rng rng(61);
  Matrix dirs = random_gaussian(5, 2, rng);
  Matrix coeffs = random_gaussian(40, 2, rng);
  Matrix features = coeffs * dirs.transpose();
  features.rowwise() += Eigen::RowVectorXd::Constant(5, 3.0);  // offset is centered away
  const GrassmannPoint p = pca_subspace(features, 2);
  const GrassmannPoint truth = GrassmannPoint::from_matrix(dirs);
  CHECK(distance(DistanceMetric::Projection, p, truth) < 1e-8);
  // Centered rank is 2, so asking for 3 directions must fail.
  CHECK_THROWS_AS(pca_subspace(features, 3), NumericalError);
  CHECK_THROWS_AS(pca_subspace(features, 6), DimensionError);
}

TEST_CASE("sgf endpoints are the source and target subspaces") {
  Rng rng(62);
  const GrassmannPoint s = random_point(8, 3, rng);
  const GrassmannPoint t = random_point(8, 3, rng);
  const auto phis = sgf_sample(s, t, {0.0, 0.25, 0.5, 0.75, 1.0});
  REQUIRE(phis.size() == 5);
  CHECK(same_subspace(phis.front(), s));
  CHECK(same_subspace(phis.back(), t));
  double prev = -1.0;
  for (const GrassmannPoint& phi : phis) {
    const double d = distance(DistanceMetric::ArcLength, s, phi);
    CHECK(d >= prev - 1e-10);
    prev = d;
  }
}

TEST_CASE("the flow kernel of a 60-degree line pair is known in closed form") {
  const GrassmannPoint s = line(1, 0);
  const GrassmannPoint t = line(0.5, std::sqrt(3.0) / 2);
  const Matrix g = gfk_matrix(s, t, 20);
  // Frozen: integral of the projector along the geodesic, entries
  // 1/2 + sin(2 theta)/(4 theta) and sin^2(theta)/(2 theta) at theta = pi/3.
  CHECK(std::abs(g(0, 0) - 0.7067483357831721) < 1e-10);
  CHECK(std::abs(g(0, 1) - 0.3580986219567645) < 1e-10);
  CHECK(std::abs(g(1, 0) - 0.3580986219567645) < 1e-10);
  CHECK(std::abs(g(1, 1) - 0.29325166421682797) < 1e-10);
}

TEST_CASE("flow kernels converge in the node count and stay psd") {
  Rng rng(63);
  const GrassmannPoint s = random_point(10, 4, rng);
  const GrassmannPoint t = random_point(10, 4, rng);
  const Matrix g20 = gfk_matrix(s, t, 20);
  const Matrix g40 = gfk_matrix(s, t, 40);
  CHECK((g20 - g40).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((g20 - g20.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const Vector eigs = sym_eig(g20).values;
  CHECK(eigs(0) >= -1e-12);
  // The integrand is a rank-k projector at every node, so the trace is k.
  CHECK(g20.trace() == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("nearest-neighbor ties go to the lowest training index") {
  DomainPair pair{line(1, 0), line(1, 0), Matrix(2, 2), {0, 1}, Matrix(1, 2), {1}};
  pair.source_features << 1, 0, -1, 0;
  pair.target_features << 0, 0;
  const AdaptResult r = adapt_classify(pair, AdaptMethod::none());
  REQUIRE(r.predicted.size() == 1);
  CHECK(r.predicted[0] == 0);
  CHECK(r.accuracy == 0.0);
}

TEST_CASE("identical domains classify perfectly without adaptation") {
  const DomainPair shifted = two_domain_shift(20, 3, 12, 0.0, 64);
  DomainPair same = shifted;
  same.target_features = same.source_features;
  same.target_labels = same.source_labels;
  same.target = same.source;
  const AdaptResult r = adapt_classify(same, AdaptMethod::none());
  CHECK(r.accuracy == 1.0);
}

TEST_CASE("adaptation closes the gap on a rotated domain pair") {
  const DomainPair pair = two_domain_shift(30, 3, 20, 60.0, 17);
  const AdaptResult raw = adapt_classify(pair, AdaptMethod::none());
  const AdaptResult sgf = adapt_classify(pair, AdaptMethod::sgf(0.5));
  const AdaptResult gfk = adapt_classify(pair, AdaptMethod::gfk());
  // Frozen benchmark: raw transfer drops points, both adaptations recover them.
  CHECK(raw.accuracy <= 0.97);
  CHECK(sgf.accuracy >= 0.99);
  CHECK(gfk.accuracy >= 0.99);
  CHECK(gfk.accuracy > raw.accuracy);
  REQUIRE(raw.predicted.size() == pair.target_labels.size());
}

TEST_CASE("sgf parameters are validated") {
  const DomainPair pair = two_domain_shift(5, 2, 8, 30.0, 65);
  CHECK_THROWS_AS(adapt_classify(pair, AdaptMethod::sgf(1.5)), DimensionError);
  CHECK_THROWS_AS(adapt_classify(pair, AdaptMethod::sgf(-0.1)), DimensionError);
  CHECK_THROWS_AS(gfk_matrix(pair.source, pair.target, 0), DimensionError);
}

}  // TEST_SUITE
