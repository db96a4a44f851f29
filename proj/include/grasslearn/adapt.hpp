#pragma once

#include <vector>

#include "grasslearn/manifold.hpp"

namespace grasslearn {

// Top-d right singular subspace of the column-centered feature matrix
// (rows are samples). Throws when d exceeds the numerical rank.
GrassmannPoint pca_subspace(const Matrix& features, int d);

// Source and target domains with their PCA subspaces; kernels and projections
// consume the raw uncentered features.
struct DomainPair {
  GrassmannPoint source;
  GrassmannPoint target;
  Matrix source_features;
  std::vector<int> source_labels;
  Matrix target_features;
  std::vector<int> target_labels;
};

// Intermediate subspaces Phi(t) on the geodesic from source to target.
std::vector<GrassmannPoint> sgf_sample(const GrassmannPoint& source,
                                       const GrassmannPoint& target,
                                       const std::vector<double>& ts);

// Geodesic flow kernel: G = sum_i w_i Phi(t_i) Phi(t_i)^T over a
// Gauss-Legendre rule on [0, 1]. Symmetric positive semidefinite.
Matrix gfk_matrix(const GrassmannPoint& source, const GrassmannPoint& target,
                  int nodes = 20);

struct AdaptMethod {
  enum Kind { NoAdapt, Sgf, Gfk } kind = NoAdapt;
  double t = 0.5;   // Sgf: geodesic parameter of the projection subspace
  int nodes = 20;   // Gfk: quadrature nodes

  static AdaptMethod none();
  static AdaptMethod sgf(double t);
  static AdaptMethod gfk(int nodes = 20);
};

struct AdaptResult {
  std::vector<int> predicted;
  double accuracy;
};

// 1-nearest-neighbor transfer from source to target under the chosen
// representation: raw features, Phi(t)-projected features, or the
// GFK-induced metric. Ties go to the lowest training index.
AdaptResult adapt_classify(const DomainPair& pair, const AdaptMethod& method);

}  // namespace grasslearn
