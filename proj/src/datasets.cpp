#include "grasslearn/datasets.hpp"

#include <cmath>
#include <limits>

namespace grasslearn {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Tangent with Frobenius norm drawn uniformly from [0, max_norm].
TangentVector random_tangent(const GrassmannPoint& base, double max_norm, Rng& rng) {
  TangentVector dir = project_to_tangent(base, random_gaussian(base.n(), base.k(), rng));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double target = max_norm * unit(rng);
  const double norm = dir.norm();
  return norm > 0.0 ? dir.scaled(target / norm) : dir;
}

GrassmannPoint perturbed(const GrassmannPoint& base, double max_norm, Rng& rng) {
  if (max_norm == 0.0) return base;
  return exp_map(random_tangent(base, max_norm, rng));
}

}  // namespace

PointCloud three_rings(int n_total, std::array<double, 3> radii, double noise_sd,
                       uint64_t seed) {
  require_dim(n_total >= 3, "three_rings: need at least three points");
  require_dim(noise_sd >= 0.0, "three_rings: noise_sd must be nonnegative");
  require_dim(radii[0] > 0.0 && radii[1] > radii[0] && radii[2] > radii[1],
              "three_rings: radii must be positive and increasing");
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PointCloud out;
  out.points = Matrix(n_total, 2);
  Index at = 0;
  for (int ring = 0; ring < 3; ++ring) {
    const int count = n_total / 3 + (ring < n_total % 3 ? 1 : 0);
    for (int i = 0; i < count; ++i, ++at) {
      const double a = angle(rng);
      const double r = radii[static_cast<size_t>(ring)] + noise_sd * gauss(rng);
      out.points(at, 0) = r * std::cos(a);
      out.points(at, 1) = r * std::sin(a);
      out.labels.push_back(ring);
    }
  }
  return out;
}

CompletionInstance low_rank_masked(Index n, Index k, int r, double obs_frac,
                                   uint64_t seed) {
  require_dim(n >= 1 && k >= 1, "low_rank_masked: empty shape");
  require_dim(r >= 1 && static_cast<Index>(r) <= std::min(n, k),
              "low_rank_masked: rank must lie in [1, min(n, k)]");
  require_dim(obs_frac > 0.0 && obs_frac <= 1.0,
              "low_rank_masked: obs_frac must lie in (0, 1]");
  Rng rng(seed);
  Matrix truth = random_gaussian(n, r, rng) * random_gaussian(k, r, rng).transpose();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix mask(n, k);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < k; ++j) mask(i, j) = unit(rng) < obs_frac ? 1.0 : 0.0;
    bool enough = true;
    for (Index j = 0; j < k && enough; ++j)
      enough = mask.col(j).sum() >= static_cast<double>(r);
    if (enough) return {make_masked(truth, std::move(mask)), truth};
  }
  throw DataError(
      "low_rank_masked: no mask with >= rank observations per column after 100 "
      "draws; raise obs_frac");
}

SubspaceClasses labeled_subspaces(int classes, int per_class, Index n, Index k,
                                  double within_angle, uint64_t seed) {
  require_dim(classes >= 2, "labeled_subspaces: need at least two classes");
  require_dim(per_class >= 1, "labeled_subspaces: need at least one sample per class");
  require_dim(within_angle >= 0.0, "labeled_subspaces: within_angle must be >= 0");
  Rng rng(seed);

  // Keep the most separated of 20 prototype draws (max-min projection distance).
  std::vector<GrassmannPoint> best;
  double best_sep = -1.0;
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<GrassmannPoint> cand;
    for (int c = 0; c < classes; ++c) cand.push_back(random_point(n, k, rng));
    double sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < classes; ++i)
      for (int j = i + 1; j < classes; ++j)
        sep = std::min(sep, distance(DistanceMetric::Projection,
                                     cand[static_cast<size_t>(i)],
                                     cand[static_cast<size_t>(j)]));
    if (sep > best_sep) {
      best_sep = sep;
      best = std::move(cand);
    }
  }

  SubspaceClasses out;
  out.prototypes = best;
  for (int c = 0; c < classes; ++c)
    for (int i = 0; i < per_class; ++i) {
      out.set.points.push_back(perturbed(best[static_cast<size_t>(c)], within_angle, rng));
      out.set.labels.push_back(c);
    }
  return out;
}

DomainPair two_domain_shift(int n_per_class, int classes, Index dim,
                            double rotation_deg, uint64_t seed) {
  require_dim(classes >= 2, "two_domain_shift: need at least two classes");
  require_dim(n_per_class >= 2, "two_domain_shift: need at least two points per class");
  require_dim(dim >= 4, "two_domain_shift: ambient dimension must be >= 4");
  Rng rng(seed);
  constexpr Index kLatent = 4;
  constexpr double kSpread = 3.0;   // class mean scale in the latent space
  constexpr double kWithin = 0.5;   // within-class standard deviation
  constexpr double kTargetNoise = 0.02;

  const GrassmannPoint latent = random_point(dim, kLatent, rng);

  // Well separated class means in latent coordinates.
  Matrix means(classes, kLatent);
  for (int attempt = 0; attempt < 50; ++attempt) {
    means = kSpread * random_gaussian(classes, kLatent, rng);
    double sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < classes; ++i)
      for (int j = i + 1; j < classes; ++j)
        sep = std::min(sep, (means.row(i) - means.row(j)).norm());
    if (sep >= 6.0 * kWithin) break;
  }

  // Rotation plane: one direction inside the latent subspace, one outside,
  // so the shift genuinely moves the data off its original span.
  Vector u = latent.basis() * random_gaussian(kLatent, 1, rng);
  u /= u.norm();
  Vector v = random_gaussian(dim, 1, rng);
  v -= latent.basis() * (latent.basis().transpose() * v);
  v -= u * u.dot(v);
  v /= v.norm();
  const double phi = rotation_deg * kTwoPi / 360.0;
  Matrix rot = Matrix::Identity(dim, dim) +
               std::sin(phi) * (v * u.transpose() - u * v.transpose()) +
               (std::cos(phi) - 1.0) * (u * u.transpose() + v * v.transpose());

  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw_domain = [&](bool target) {
    Matrix feats(static_cast<Index>(classes) * n_per_class, dim);
    std::vector<int> labels;
    Index at = 0;
    for (int c = 0; c < classes; ++c)
      for (int i = 0; i < n_per_class; ++i, ++at) {
        Vector coords = means.row(c).transpose();
        for (Index l = 0; l < kLatent; ++l) coords[l] += kWithin * gauss(rng);
        Vector x = latent.basis() * coords;
        if (target) {
          x = rot * x;
          for (Index l = 0; l < dim; ++l) x[l] += kTargetNoise * gauss(rng);
        }
        feats.row(at) = x.transpose();
        labels.push_back(c);
      }
    return std::pair<Matrix, std::vector<int>>(std::move(feats), std::move(labels));
  };

  auto [sf, sl] = draw_domain(false);
  auto [tf, tl] = draw_domain(true);
  GrassmannPoint xs = pca_subspace(sf, static_cast<int>(kLatent));
  GrassmannPoint xt = pca_subspace(tf, static_cast<int>(kLatent));
  return {std::move(xs), std::move(xt), std::move(sf), std::move(sl),
          std::move(tf), std::move(tl)};
}

ConstellationData constellation(Index n, Index k, int codewords, int per_codeword,
                                double noise_angle, uint64_t seed) {
  require_dim(codewords >= 1, "constellation: need at least one codeword");
  require_dim(per_codeword >= 1, "constellation: need at least one copy per codeword");
  require_dim(noise_angle >= 0.0, "constellation: noise_angle must be >= 0");
  Rng rng(seed);

  std::vector<GrassmannPoint> code;
  for (int attempt = 0; attempt < 100; ++attempt) {
    code.clear();
    for (int c = 0; c < codewords; ++c) code.push_back(random_point(n, k, rng));
    double sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < codewords; ++i)
      for (int j = i + 1; j < codewords; ++j)
        sep = std::min(sep, distance(DistanceMetric::Chordal,
                                     code[static_cast<size_t>(i)],
                                     code[static_cast<size_t>(j)]));
    if (sep >= 4.0 * noise_angle) {
      ConstellationData out;
      out.codewords = code;
      for (int c = 0; c < codewords; ++c)
        for (int i = 0; i < per_codeword; ++i) {
          out.set.points.push_back(
              perturbed(code[static_cast<size_t>(c)], noise_angle, rng));
          out.set.labels.push_back(c);
        }
      return out;
    }
  }
  throw DataError(
      "constellation: could not separate codewords by 4 * noise_angle in 100 "
      "draws; lower noise_angle or the codeword count");
}

}  // namespace grasslearn
