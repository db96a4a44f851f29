#include "grasslearn/adapt.hpp"

#include <cmath>
#include <limits>

namespace grasslearn {

GrassmannPoint pca_subspace(const Matrix& features, int d) {
  require_dim(features.rows() >= 2, "pca_subspace: need at least two samples");
  require_dim(d >= 1 && static_cast<Index>(d) <= features.cols(),
              "pca_subspace: d must lie in [1, feature dimension]");
  require_finite(features, "pca_subspace");
  Matrix centered = features.rowwise() - features.colwise().mean();
  SvdResult svd = svd_compact(centered);
  if (svd.s[d - 1] <= 1e-10 * svd.s[0])
    throw NumericalError("pca_subspace: requested " + std::to_string(d) +
                         " directions but numerical rank is lower");
  return GrassmannPoint::from_orthonormal(svd.v.leftCols(d));
}

std::vector<GrassmannPoint> sgf_sample(const GrassmannPoint& source,
                                       const GrassmannPoint& target,
                                       const std::vector<double>& ts) {
  const TangentVector dir = log_map(source, target);
  std::vector<GrassmannPoint> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(geodesic_point(dir, t));
  return out;
}

Matrix gfk_matrix(const GrassmannPoint& source, const GrassmannPoint& target,
                  int nodes) {
  require_dim(nodes >= 1, "gfk_matrix: need at least one quadrature node");
  const TangentVector dir = log_map(source, target);
  const Quadrature quad = gauss_legendre(nodes, 0.0, 1.0);
  Matrix g = Matrix::Zero(source.n(), source.n());
  for (int i = 0; i < nodes; ++i) {
    const Matrix phi = geodesic_point(dir, quad.nodes[i]).basis();
    g += quad.weights[i] * (phi * phi.transpose());
  }
  return 0.5 * (g + g.transpose());
}

AdaptMethod AdaptMethod::none() { return {NoAdapt, 0.0, 0}; }

AdaptMethod AdaptMethod::sgf(double t) {
  require_dim(t >= 0.0 && t <= 1.0, "sgf: t must lie in [0, 1]");
  return {Sgf, t, 0};
}

AdaptMethod AdaptMethod::gfk(int nodes) {
  require_dim(nodes >= 1, "gfk: need at least one quadrature node");
  return {Gfk, 0.0, nodes};
}

namespace {

// 1-NN with squared distances supplied per (test, train) pair.
std::vector<int> nearest_neighbor(const Matrix& d2,
                                  const std::vector<int>& train_labels) {
  std::vector<int> out(static_cast<size_t>(d2.rows()));
  for (Index i = 0; i < d2.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < d2.cols(); ++j)
      if (d2(i, j) < d2(i, best)) best = j;
    out[static_cast<size_t>(i)] = train_labels[static_cast<size_t>(best)];
  }
  return out;
}

}  // namespace

AdaptResult adapt_classify(const DomainPair& pair, const AdaptMethod& method) {
  const Matrix& xs = pair.source_features;
  const Matrix& xt = pair.target_features;
  require_dim(xs.cols() == xt.cols(),
              "adapt_classify: feature dimensions differ across domains");
  require_dim(static_cast<Index>(pair.source_labels.size()) == xs.rows(),
              "adapt_classify: source label count");
  require_dim(static_cast<Index>(pair.target_labels.size()) == xt.rows(),
              "adapt_classify: target label count");

  Matrix d2(xt.rows(), xs.rows());
  switch (method.kind) {
    case AdaptMethod::NoAdapt: {
      for (Index i = 0; i < xt.rows(); ++i)
        for (Index j = 0; j < xs.rows(); ++j)
          d2(i, j) = (xt.row(i) - xs.row(j)).squaredNorm();
      break;
    }
    case AdaptMethod::Sgf: {
      const GrassmannPoint phi =
          sgf_sample(pair.source, pair.target, {method.t}).front();
      const Matrix zs = xs * phi.basis();
      const Matrix zt = xt * phi.basis();
      for (Index i = 0; i < zt.rows(); ++i)
        for (Index j = 0; j < zs.rows(); ++j)
          d2(i, j) = (zt.row(i) - zs.row(j)).squaredNorm();
      break;
    }
    case AdaptMethod::Gfk: {
      const Matrix g = gfk_matrix(pair.source, pair.target, method.nodes);
      // d^2(x, y) = x^T G x + y^T G y - 2 x^T G y
      const Matrix gs = xs * g;  // N_s x n
      const Vector qs = (gs.cwiseProduct(xs)).rowwise().sum();
      const Matrix gt = xt * g;
      const Vector qt = (gt.cwiseProduct(xt)).rowwise().sum();
      const Matrix cross = gt * xs.transpose();  // N_t x N_s
      for (Index i = 0; i < xt.rows(); ++i)
        for (Index j = 0; j < xs.rows(); ++j)
          d2(i, j) = std::max(0.0, qt[i] + qs[j] - 2.0 * cross(i, j));
      break;
    }
  }

  std::vector<int> predicted = nearest_neighbor(d2, pair.source_labels);
  size_t hits = 0;
  for (size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == pair.target_labels[i]) ++hits;
  const double accuracy =
      static_cast<double>(hits) / static_cast<double>(predicted.size());
  return {std::move(predicted), accuracy};
}

}  // namespace grasslearn
