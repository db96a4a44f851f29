#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "grasslearn/datasets.hpp"
#include "util.hpp"

using namespace grasslearn;

TEST_SUITE("datasets") {

TEST_CASE("three_rings puts each ring near its radius") {
  const PointCloud noiseless = three_rings(300, {1.0, 2.0, 3.0}, 0.0, 91);
  REQUIRE(noiseless.points.rows() == 300);
  REQUIRE(noiseless.points.cols() == 2);
  REQUIRE(noiseless.labels.size() == 300);
  std::map<int, int> counts;
  for (int i = 0; i < 300; ++i) {
    const int l = noiseless.labels[static_cast<size_t>(i)];
    ++counts[l];
    const double r = noiseless.points.row(i).norm();
    CHECK(std::abs(r - static_cast<double>(l + 1)) < 1e-12);
  }
  REQUIRE(counts.size() == 3);
  for (const auto& [label, count] : counts) CHECK(count == 100);
}

TEST_CASE("three_rings is seed-deterministic and validates arguments") {
  const PointCloud a = three_rings(120, 0.1, 5);
  const PointCloud b = three_rings(120, 0.1, 5);
  const PointCloud c = three_rings(120, 0.1, 6);
  CHECK((a.points - b.points).norm() == 0.0);
  CHECK(a.labels == b.labels);
  CHECK((a.points - c.points).norm() > 0.0);
  CHECK_THROWS_AS(three_rings(2, 0.1, 5), DimensionError);
  CHECK_THROWS_AS(three_rings(30, -0.5, 5), DimensionError);
  CHECK_THROWS_AS(three_rings(30, {2.0, 1.0, 3.0}, 0.1, 5), DimensionError);
}

TEST_CASE("low_rank_masked leaves every column identifiable") {
  const CompletionInstance inst = low_rank_masked(18, 12, 3, 0.5, 92);
  REQUIRE(inst.truth.rows() == 18);
  REQUIRE(inst.truth.cols() == 12);
  const Vector s = svd_compact(inst.truth).s;
  CHECK(s(2) > 1e-8);
  CHECK(s(3) < 1e-12 * s(0));
  for (Index j = 0; j < 12; ++j) {
    CHECK(inst.masked.mask.col(j).sum() >= 3.0);
    for (Index i = 0; i < 18; ++i) {
      const double m = inst.masked.mask(i, j);
      CHECK((m == 0.0 || m == 1.0));
      if (m == 1.0) CHECK(inst.masked.values(i, j) == inst.truth(i, j));
    }
  }
  CHECK_THROWS_AS(low_rank_masked(4, 4, 5, 0.5, 92), DimensionError);
  CHECK_THROWS_AS(low_rank_masked(4, 4, 2, 0.0, 92), DimensionError);
  // Demanding 3 observed entries per column from a tiny fraction cannot work.
  CHECK_THROWS_AS(low_rank_masked(4, 4, 3, 0.05, 92), DataError);
}

TEST_CASE("labeled_subspaces samples stay within the stated angle") {
  const SubspaceClasses data = labeled_subspaces(3, 8, 10, 3, 0.3, 93);
  REQUIRE(data.set.points.size() == 24);
  REQUIRE(data.prototypes.size() == 3);
  for (size_t i = 0; i < data.set.points.size(); ++i) {
    const int label = data.set.labels[i];
    const double d = distance(DistanceMetric::ArcLength, data.set.points[i],
                              data.prototypes[static_cast<size_t>(label)]);
    CHECK(d <= 0.3 + 1e-9);
  }
  // Prototypes are pushed apart, samples hug their own prototype.
  for (size_t a = 0; a < 3; ++a)
    for (size_t b = a + 1; b < 3; ++b)
      CHECK(distance(DistanceMetric::Projection, data.prototypes[a],
                     data.prototypes[b]) > 0.3);
}

TEST_CASE("two_domain_shift attaches 4-dimensional pca subspaces") {
  const DomainPair pair = two_domain_shift(15, 3, 12, 45.0, 94);
  REQUIRE(pair.source_features.rows() == 45);
  REQUIRE(pair.source_features.cols() == 12);
  REQUIRE(pair.target_features.rows() == 45);
  REQUIRE(pair.source_labels.size() == 45);
  REQUIRE(pair.target_labels.size() == 45);
  CHECK(pair.source.n() == 12);
  CHECK(pair.source.k() == 4);
  CHECK(pair.target.k() == 4);
  CHECK(same_subspace(pair.source, pca_subspace(pair.source_features, 4)));
  // A nonzero rotation separates the domain subspaces.
  CHECK(distance(DistanceMetric::Projection, pair.source, pair.target) > 0.05);
  const DomainPair still = two_domain_shift(15, 3, 12, 0.0, 94);
  CHECK(distance(DistanceMetric::Projection, still.source, still.target) <
        distance(DistanceMetric::Projection, pair.source, pair.target));
}

TEST_CASE("constellation codewords honor the separation contract") {
  const ConstellationData data = constellation(4, 2, 8, 5, 0.05, 95);
  REQUIRE(data.codewords.size() == 8);
  REQUIRE(data.set.points.size() == 40);
  double min_sep = 1e300;
  for (size_t a = 0; a < 8; ++a)
    for (size_t b = a + 1; b < 8; ++b)
      min_sep = std::min(min_sep, distance(DistanceMetric::Chordal,
                                           data.codewords[a], data.codewords[b]));
  CHECK(min_sep >= 4 * 0.05);
  for (size_t i = 0; i < 40; ++i) {
    const auto& code = data.codewords[static_cast<size_t>(data.set.labels[i])];
    CHECK(distance(DistanceMetric::ArcLength, data.set.points[i], code) <=
          0.05 + 1e-9);
  }
}

TEST_CASE("noiseless constellations repeat their codewords exactly") {
  const ConstellationData data = constellation(4, 2, 3, 2, 0.0, 96);
  for (size_t i = 0; i < data.set.points.size(); ++i) {
    const auto& code = data.codewords[static_cast<size_t>(data.set.labels[i])];
    CHECK(distance(DistanceMetric::Chordal, data.set.points[i], code) < 1e-12);
  }
}

TEST_CASE("generators are deterministic across the board") {
  CHECK((low_rank_masked(10, 8, 2, 0.6, 7).truth -
         low_rank_masked(10, 8, 2, 0.6, 7).truth)
            .norm() == 0.0);
  const SubspaceClasses sa = labeled_subspaces(2, 3, 6, 2, 0.2, 8);
  const SubspaceClasses sb = labeled_subspaces(2, 3, 6, 2, 0.2, 8);
  for (size_t i = 0; i < sa.set.points.size(); ++i)
    CHECK((sa.set.points[i].basis() - sb.set.points[i].basis()).norm() == 0.0);
  const DomainPair da = two_domain_shift(5, 2, 8, 30.0, 9);
  const DomainPair db = two_domain_shift(5, 2, 8, 30.0, 9);
  CHECK((da.target_features - db.target_features).norm() == 0.0);
  CHECK(da.target_labels == db.target_labels);
}

}  // TEST_SUITE
