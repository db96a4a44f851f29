#include "grasslearn/gda.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace grasslearn {

void validate(const LabeledGrassmannSet& data, int min_classes) {
  require_dim(!data.points.empty(), "labeled set: no points");
  require_dim(data.points.size() == data.labels.size(),
              "labeled set: " + std::to_string(data.points.size()) + " points vs " +
                  std::to_string(data.labels.size()) + " labels");
  const Index n = data.points.front().n();
  const Index k = data.points.front().k();
  for (const auto& p : data.points)
    require_dim(p.n() == n && p.k() == k,
                "labeled set: points live on different Grassmannians");
  const auto classes = class_values(data.labels);
  require_dim(static_cast<int>(classes.size()) >= min_classes,
              "labeled set: need at least " + std::to_string(min_classes) +
                  " classes, got " + std::to_string(classes.size()));
}

std::vector<int> class_values(const std::vector<int>& labels) {
  std::vector<int> classes(labels);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

GdaScatter gda_scatter(const Matrix& gram, const std::vector<int>& labels) {
  const Index n = gram.rows();
  require_dim(gram.cols() == n, "gda_scatter: Gram matrix must be square");
  require_dim(static_cast<Index>(labels.size()) == n,
              "gda_scatter: label count must match the Gram matrix");

  // V is built from class index sets, so label order is free.
  std::map<int, std::vector<Index>> groups;
  for (Index i = 0; i < n; ++i) groups[labels[static_cast<size_t>(i)]].push_back(i);

  Matrix v = Matrix::Zero(n, n);
  for (const auto& [label, idx] : groups) {
    const double w = 1.0 / static_cast<double>(idx.size());
    for (Index a : idx)
      for (Index b : idx) v(a, b) = w;
  }
  const Matrix ones = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  Matrix sb = gram * (v - ones) * gram;
  Matrix sw = gram * (Matrix::Identity(n, n) - v) * gram;
  // Exact symmetry for the eigensolvers downstream.
  sb = 0.5 * (sb + sb.transpose()).eval();
  sw = 0.5 * (sw + sw.transpose()).eval();
  return {std::move(sb), std::move(sw)};
}

double gda_default_epsilon(const Matrix& gram) {
  return 1e-4 * gram.trace() / static_cast<double>(gram.rows());
}

GdaModel gda_fit(const LabeledGrassmannSet& data, const KernelSpec& spec,
                 double epsilon, int m) {
  validate(data, 2);
  require_dim(epsilon > 0.0, "gda_fit: epsilon must be positive");
  const auto classes = class_values(data.labels);
  const int c = static_cast<int>(classes.size());
  require_dim(m >= 1 && m <= c - 1,
              "gda_fit: m must lie in [1, C-1] = [1, " + std::to_string(c - 1) +
                  "], got " + std::to_string(m));

  KernelGram k = gram(spec, data.points);
  GdaScatter scatter = gda_scatter(k.entries, data.labels);
  const Index n = k.entries.rows();

  Matrix reg = scatter.sw + (epsilon * epsilon) * Matrix::Identity(n, n);
  EigResult ew = sym_eig(reg);
  // reg is positive definite by construction, so the inverse square root is safe.
  Matrix isqrt = ew.vectors *
                 ew.values.array().rsqrt().matrix().asDiagonal() *
                 ew.vectors.transpose();
  Matrix mat = isqrt * scatter.sb * isqrt;
  mat = 0.5 * (mat + mat.transpose()).eval();
  EigResult eb = sym_eig(mat);

  Matrix alpha(n, m);
  Vector quotients(m);
  for (int j = 0; j < m; ++j) {
    const Index src = n - 1 - j;  // ascending order, take from the top
    alpha.col(j) = isqrt * eb.vectors.col(src);
    quotients[j] = eb.values[src];
  }

  Matrix embedded = k.entries * alpha;  // N x m
  Matrix means = Matrix::Zero(c, m);
  std::vector<int> counts(static_cast<size_t>(c), 0);
  for (Index i = 0; i < n; ++i) {
    const auto it = std::lower_bound(classes.begin(), classes.end(),
                                     data.labels[static_cast<size_t>(i)]);
    const Index ci = it - classes.begin();
    means.row(ci) += embedded.row(i);
    ++counts[static_cast<size_t>(ci)];
  }
  for (int ci = 0; ci < c; ++ci)
    means.row(ci) /= static_cast<double>(counts[static_cast<size_t>(ci)]);

  return {std::move(k.entries), std::move(alpha), std::move(quotients), epsilon,
          data.labels, classes, std::move(means), spec};
}

Matrix gda_embed(const GdaModel& model, const Matrix& kernel_rows) {
  require_dim(kernel_rows.cols() == model.gram.rows(),
              "gda_embed: kernel rows must have one column per training point");
  require_finite(kernel_rows, "gda_embed");
  return kernel_rows * model.alpha;
}

std::vector<int> gda_classify(const GdaModel& model, const Matrix& kernel_rows) {
  const Matrix embedded = gda_embed(model, kernel_rows);
  std::vector<int> out(static_cast<size_t>(embedded.rows()));
  for (Index i = 0; i < embedded.rows(); ++i) {
    Index best = 0;
    double best_d = (embedded.row(i) - model.class_means.row(0)).squaredNorm();
    for (Index ci = 1; ci < model.class_means.rows(); ++ci) {
      const double d = (embedded.row(i) - model.class_means.row(ci)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = ci;
      }
    }
    out[static_cast<size_t>(i)] = model.classes[static_cast<size_t>(best)];
  }
  return out;
}

Matrix gda_kernel_rows(const GdaModel& model,
                       const std::vector<GrassmannPoint>& train_points,
                       const std::vector<GrassmannPoint>& queries) {
  require_dim(static_cast<Index>(train_points.size()) == model.gram.rows(),
              "gda_kernel_rows: training point count must match the model");
  Matrix rows(static_cast<Index>(queries.size()),
              static_cast<Index>(train_points.size()));
  for (Index i = 0; i < rows.rows(); ++i)
    for (Index j = 0; j < rows.cols(); ++j)
      rows(i, j) = kernel_eval(model.spec, queries[static_cast<size_t>(i)],
                               train_points[static_cast<size_t>(j)]);
  return rows;
}

double gda_quotient(const GdaScatter& scatter, double epsilon, const Vector& dir) {
  require_dim(dir.size() == scatter.sb.rows(), "gda_quotient: direction size");
  const double num = dir.dot(scatter.sb * dir);
  const double den =
      dir.dot(scatter.sw * dir) + epsilon * epsilon * dir.squaredNorm();
  return num / den;
}

}  // namespace grasslearn
