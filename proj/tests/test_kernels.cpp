#include <doctest.h>

#include <cmath>
#include <vector>

#include "grasslearn/kernels.hpp"
#include "grasslearn/numerics.hpp"
#include "util.hpp"

using namespace grasslearn;
using grasslearn::testing::random_rotation;

namespace {

std::vector<GrassmannPoint> random_points(Index n, Index k, int count, uint64_t seed) {
  Rng rng(seed);
  std::vector<GrassmannPoint> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(random_point(n, k, rng));
  return pts;
}

GrassmannPoint line60() {
  Matrix m(2, 1);
  m << 0.5, std::sqrt(3.0) / 2;
  return GrassmannPoint::from_orthonormal(m);
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("projection kernel is the squared cosine sum") {
  const GrassmannPoint e1 = GrassmannPoint::from_orthonormal(Matrix::Identity(2, 1));
  const KernelSpec spec = KernelSpec::projection();
  CHECK(kernel_eval(spec, e1, line60()) == doctest::Approx(0.25).epsilon(1e-12));
  // Self-evaluation counts one cosine of 1 per subspace dimension.
  CHECK(kernel_eval(spec, e1, e1) == doctest::Approx(1.0).epsilon(1e-12));
  Rng rng(21);
  const GrassmannPoint x = random_point(7, 3, rng);
  CHECK(kernel_eval(spec, x, x) == doctest::Approx(3.0).epsilon(1e-10));
  const GrassmannPoint y = random_point(7, 3, rng);
  const Vector c = principal_angles(x, y).cosines();
  CHECK(kernel_eval(spec, x, y) == doctest::Approx(c.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("binet-cauchy kernel is the squared cosine product") {
  const GrassmannPoint e1 = GrassmannPoint::from_orthonormal(Matrix::Identity(2, 1));
  const KernelSpec spec = KernelSpec::binet_cauchy();
  CHECK(kernel_eval(spec, e1, line60()) == doctest::Approx(0.25).epsilon(1e-12));
  Rng rng(22);
  const GrassmannPoint x = random_point(6, 2, rng);
  const GrassmannPoint y = random_point(6, 2, rng);
  const Vector c = principal_angles(x, y).cosines();
  CHECK(kernel_eval(spec, x, y) ==
        doctest::Approx(c(0) * c(0) * c(1) * c(1)).epsilon(1e-10));
  CHECK(kernel_eval(spec, x, x) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gaussian kernels are admitted over projection and chordal only") {
  CHECK_NOTHROW(KernelSpec::gaussian(1.0, DistanceMetric::Projection));
  CHECK_NOTHROW(KernelSpec::gaussian(1.0, DistanceMetric::Chordal));
  CHECK_THROWS_AS(KernelSpec::gaussian(1.0, DistanceMetric::ArcLength),
                  DimensionError);
  CHECK_THROWS_AS(KernelSpec::gaussian(1.0, DistanceMetric::FubiniStudy),
                  DimensionError);
  CHECK_THROWS_AS(KernelSpec::gaussian(0.0, DistanceMetric::Projection),
                  DimensionError);
  CHECK_THROWS_AS(KernelSpec::gaussian(-2.0, DistanceMetric::Chordal),
                  DimensionError);
}

TEST_CASE("gaussian kernel matches exp(-d^2 / (2 sigma^2))") {
  Rng rng(23);
  const GrassmannPoint x = random_point(5, 2, rng);
  const GrassmannPoint y = random_point(5, 2, rng);
  const double sigma = 0.7;
  const KernelSpec spec = KernelSpec::gaussian(sigma, DistanceMetric::Chordal);
  const double d = distance(DistanceMetric::Chordal, x, y);
  CHECK(kernel_eval(spec, x, y) ==
        doctest::Approx(std::exp(-d * d / (2 * sigma * sigma))).epsilon(1e-12));
  CHECK(kernel_eval(spec, x, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("50-point grams stay positive semidefinite") {
  const auto pts = random_points(8, 3, 50, 24);
  for (const KernelSpec& spec :
       {KernelSpec::projection(), KernelSpec::binet_cauchy(),
        KernelSpec::gaussian(1.0, DistanceMetric::Projection)}) {
    const KernelGram g = gram(spec, pts);
    REQUIRE(g.entries.rows() == 50);
    CHECK((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Vector eigs = sym_eig(g.entries).values;
    CHECK(eigs(0) >= -1e-8 * eigs(49));
  }
}

TEST_CASE("kernels are invariant to generator rotation") {
  Rng rng(25);
  const GrassmannPoint x = random_point(9, 3, rng);
  const GrassmannPoint y = random_point(9, 3, rng);
  const GrassmannPoint xr =
      GrassmannPoint::from_orthonormal(x.basis() * random_rotation(3, rng));
  const GrassmannPoint yr =
      GrassmannPoint::from_orthonormal(y.basis() * random_rotation(3, rng));
  for (const KernelSpec& spec :
       {KernelSpec::projection(), KernelSpec::binet_cauchy(),
        KernelSpec::gaussian(0.8, DistanceMetric::Chordal)}) {
    CHECK(std::abs(kernel_eval(spec, x, y) - kernel_eval(spec, xr, yr)) < 1e-10);
  }
}

TEST_CASE("kernel embedding distances reduce to metric identities") {
  Rng rng(26);
  for (int rep = 0; rep < 10; ++rep) {
    const GrassmannPoint x = random_point(7, 2, rng);
    const GrassmannPoint y = random_point(7, 2, rng);
    // ||phi(x) - phi(y)||^2 = 2 sum sin^2 for the projection embedding.
    CHECK(std::abs(kernel_distance(KernelSpec::projection(), x, y) -
                   std::sqrt(2.0) * distance(DistanceMetric::Projection, x, y)) <
          1e-10);
    CHECK(std::abs(kernel_distance(KernelSpec::binet_cauchy(), x, y) -
                   std::sqrt(2.0) * distance(DistanceMetric::BinetCauchy, x, y)) <
          1e-10);
  }
}

TEST_CASE("kernel kind names round-trip") {
  CHECK(to_string(KernelKind::Projection) == "projection");
  CHECK(to_string(KernelKind::BinetCauchy) == "binet-cauchy");
  CHECK(kernel_kind_from_string("binet-cauchy") == KernelKind::BinetCauchy);
  CHECK(kernel_kind_from_string("binetcauchy") == KernelKind::BinetCauchy);
  CHECK(kernel_kind_from_string("gaussian") == KernelKind::GaussianOnDistance);
  CHECK_THROWS_AS(kernel_kind_from_string("rbf"), DataError);
}

TEST_CASE("gram rejects points from different grassmannians") {
  Rng rng(27);
  std::vector<GrassmannPoint> pts = {random_point(5, 2, rng), random_point(6, 2, rng)};
  CHECK_THROWS_AS(gram(KernelSpec::projection(), pts), DimensionError);
}

}  // TEST_SUITE
