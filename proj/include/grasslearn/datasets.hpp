#pragma once

#include <array>
#include <vector>

#include "grasslearn/adapt.hpp"
#include "grasslearn/completion.hpp"
#include "grasslearn/gda.hpp"

namespace grasslearn {

// Every generator is deterministic in its seed.

// Three concentric noisy rings in the plane, labels by ring.
struct PointCloud {
  Matrix points;  // N x 2
  std::vector<int> labels;
};

PointCloud three_rings(int n_total, std::array<double, 3> radii, double noise_sd,
                       uint64_t seed);

inline PointCloud three_rings(int n_total, double noise_sd, uint64_t seed) {
  return three_rings(n_total, {1.0, 2.0, 3.0}, noise_sd, seed);
}

// Random rank-r matrix with a Bernoulli observation mask; the mask is redrawn
// (up to 100 times) until every column has at least r observed entries.
struct CompletionInstance {
  MaskedMatrix masked;
  Matrix truth;
};

CompletionInstance low_rank_masked(Index n, Index k, int r, double obs_frac,
                                   uint64_t seed);

// Class prototypes separated by max-min projection distance over 20 draws;
// samples are exponential-map perturbations with tangent norm <= within_angle.
struct SubspaceClasses {
  LabeledGrassmannSet set;
  std::vector<GrassmannPoint> prototypes;
};

SubspaceClasses labeled_subspaces(int classes, int per_class, Index n, Index k,
                                  double within_angle, uint64_t seed);

// Gaussian class blobs living in a 4-dimensional latent subspace; the target
// domain sees the same blobs through a rotation by rotation_deg in a plane
// that tilts one latent direction out of the subspace, plus mild noise.
// PCA subspaces of dimension 4 are attached.
DomainPair two_domain_shift(int n_per_class, int classes, Index dim,
                            double rotation_deg, uint64_t seed);

// Codebook of well separated subspaces (min pairwise chordal distance at
// least 4 * noise_angle, redrawn up to 100 times) with per-codeword
// perturbed copies.
struct ConstellationData {
  LabeledGrassmannSet set;
  std::vector<GrassmannPoint> codewords;
};

ConstellationData constellation(Index n, Index k, int codewords, int per_codeword,
                                double noise_angle, uint64_t seed);

}  // namespace grasslearn
