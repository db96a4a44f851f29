#pragma once

#include <vector>

#include "grasslearn/optim.hpp"

namespace grasslearn {

// Gaussian affinity on row vectors, zero diagonal.
Matrix affinity(const Matrix& items, double sigma);

enum class LaplacianKind { Unnormalized, NormalizedSymmetric };

LaplacianKind laplacian_kind_from_string(const std::string& name);
std::string to_string(LaplacianKind kind);

// d - w, or i - d^{-1/2} w d^{-1/2} with the 0^{-1/2} := 0 convention for
// isolated vertices.
Matrix laplacian(const Matrix& w, LaplacianKind kind);

// Columns are the k eigenvectors of the smallest eigenvalues; orthonormal,
// so the result is a generator of a point on G(N, k).
Matrix spectral_embed(const Matrix& lap, int k);

// Spectral embedding with an entrywise sparsity penalty on U U^T, smoothed by
// h_mu(x) = sqrt(x^2 + mu^2) - mu and minimized over the Grassmannian
// starting from the plain spectral embedding.
struct SparseSpectralConfig {
  int k = 2;
  double beta = 0.01;
  double mu = 1e-3;
  OptimConfig optim;
};

struct SparseSpectralResult {
  GrassmannPoint u;
  OptimResult opt;
};

SparseSpectralResult sparse_spectral(const Matrix& lap,
                                     const SparseSpectralConfig& config);

// Lloyd k-means on embedding rows: 10 seeded restarts, up to 100 iterations,
// ties to the lowest center index, empty clusters reseeded from the farthest
// point. Rows are unit normalized first unless normalize_rows is false.
std::vector<int> cluster_rows(const Matrix& embedding, int k, bool normalize_rows,
                              Rng& rng);

// K-means on the Grassmannian: chordal assignment, extrinsic mean update
// (top-k eigenvectors of the summed projectors).
struct GrassmannKmeansResult {
  std::vector<int> labels;
  std::vector<GrassmannPoint> centers;
  std::vector<double> objective_trace;  // sum of squared chordal distances
  int iterations;
};

GrassmannKmeansResult grassmann_kmeans(const std::vector<GrassmannPoint>& points,
                                       int n_clusters, int max_iters, Rng& rng);

// Clustering quality against ground truth: best label matching over
// permutations of the predicted labels, and the adjusted Rand index.
double best_match_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth);
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace grasslearn
