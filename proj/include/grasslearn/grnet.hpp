#pragma once

#include <vector>

#include "grasslearn/gda.hpp"

namespace grasslearn {

// Feedforward net on subspace inputs: per-filter full-rank map, QR
// re-orthonormalization, projector pooling (arithmetic mean), dominant
// subspace extraction, projector embedding, then a linear softmax head on
// the scaled upper triangle.
struct GrNetDims {
  Index n = 0;      // ambient dimension of the inputs
  Index k_in = 0;   // subspace dimension of the inputs
  Index m = 0;      // filter output rows, m >= k_in
  Index d = 0;      // dominant subspace dimension, d <= m
  int classes = 0;
  int filters = 1;
};

void validate(const GrNetDims& dims);

// fc has m(m+1)/2 + 1 rows (trailing row is the bias) and one column per
// class.
struct GrNetParams {
  GrNetDims dims;
  std::vector<Matrix> filters;  // each m x n
  Matrix fc;
  std::vector<int> class_labels;  // logit column -> label value
};

GrNetParams grnet_init(const GrNetDims& dims, Rng& rng);

struct GrNetActivation {
  std::vector<Matrix> q;  // per-filter orthonormal maps, m x k_in
  Matrix pooled;          // mean projector, m x m
  Matrix u;               // dominant eigenvectors, m x d, descending
  Matrix final_proj;      // u u^T
  Vector features;        // sqrt(2)-scaled upper triangle of final_proj
  Vector logits;
  double eigengap;        // between the d-th and (d+1)-th eigenvalue
  bool gap_warning;       // eigengap < 1e-6: derivative not trustworthy
};

GrNetActivation grnet_forward(const GrNetParams& params, const GrassmannPoint& x);

// Mean softmax cross entropy over the set.
double grnet_loss(const GrNetParams& params, const LabeledGrassmannSet& data);

// Central finite differences over every parameter entry, flattened filters
// first and fc last. Exposed so step-halving consistency can be checked.
Vector grnet_fd_gradient(const GrNetParams& params, const LabeledGrassmannSet& data,
                         double fd_step);

struct GrNetTrainConfig {
  int epochs = 30;
  double step = 0.5;
  double fd_step = 1e-5;
  double min_step = 1e-10;
};

struct GrNetTrainResult {
  GrNetParams params;  // parameters achieving the lowest seen loss
  std::vector<double> loss_trace;
  double best_loss;
};

// Full-batch gradient descent on finite-difference gradients with step
// halving whenever a step would increase the loss.
GrNetTrainResult grnet_train(const GrNetParams& initial,
                             const LabeledGrassmannSet& data,
                             const GrNetTrainConfig& config);

std::vector<int> grnet_predict(const GrNetParams& params,
                               const std::vector<GrassmannPoint>& points);

double grnet_accuracy(const GrNetParams& params, const LabeledGrassmannSet& data);

}  // namespace grasslearn
