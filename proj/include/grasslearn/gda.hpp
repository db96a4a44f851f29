#pragma once

#include <vector>

#include "grasslearn/kernels.hpp"

namespace grasslearn {

// Points with integer class labels. Labels may be any values; classes are the
// sorted distinct labels. All points share one ambient (n, k).
struct LabeledGrassmannSet {
  std::vector<GrassmannPoint> points;
  std::vector<int> labels;
};

// Validates shapes, label count and class count (>= 2 when required).
void validate(const LabeledGrassmannSet& data, int min_classes = 1);
std::vector<int> class_values(const std::vector<int>& labels);

// Kernel discriminant scatter pair: sb = K (V - [1/N]) K and
// sw = K (I - V) K, where V is block diagonal with 1/N_c over each class.
struct GdaScatter {
  Matrix sb;
  Matrix sw;
};

GdaScatter gda_scatter(const Matrix& gram, const std::vector<int>& labels);

struct GdaModel {
  Matrix gram;                  // N x N training Gram matrix
  Matrix alpha;                 // N x m expansion coefficients
  Vector quotients;             // m Rayleigh quotient values, descending
  double epsilon;               // ridge added to the within scatter
  std::vector<int> train_labels;
  std::vector<int> classes;     // sorted distinct labels
  Matrix class_means;           // C x m, means of embedded training points
  KernelSpec spec;
};

double gda_default_epsilon(const Matrix& gram);

// Fits m discriminant directions, m <= C - 1. The generalized problem
// (sb, sw + eps^2 I) is solved through the inverse square root of the
// regularized within scatter.
GdaModel gda_fit(const LabeledGrassmannSet& data, const KernelSpec& spec,
                 double epsilon, int m);

// kernel_rows: Q x N matrix of kernel evaluations against the training set.
Matrix gda_embed(const GdaModel& model, const Matrix& kernel_rows);
std::vector<int> gda_classify(const GdaModel& model, const Matrix& kernel_rows);

Matrix gda_kernel_rows(const GdaModel& model,
                       const std::vector<GrassmannPoint>& train_points,
                       const std::vector<GrassmannPoint>& queries);

// Rayleigh quotient of an arbitrary direction under the fitted scatters.
double gda_quotient(const GdaScatter& scatter, double epsilon, const Vector& dir);

}  // namespace grasslearn
