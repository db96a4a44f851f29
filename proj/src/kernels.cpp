#include "grasslearn/kernels.hpp"

#include <cmath>

namespace grasslearn {

KernelSpec KernelSpec::projection() {
  return {KernelKind::Projection, 0.0, DistanceMetric::Projection};
}

KernelSpec KernelSpec::binet_cauchy() {
  return {KernelKind::BinetCauchy, 0.0, DistanceMetric::BinetCauchy};
}

KernelSpec KernelSpec::gaussian(double sigma, DistanceMetric base) {
  require_dim(sigma > 0.0, "gaussian kernel: sigma must be positive");
  if (base != DistanceMetric::Projection && base != DistanceMetric::Chordal)
    throw DimensionError(
        "gaussian kernel: base metric must be projection or chordal, got " +
        to_string(base));
  return {KernelKind::GaussianOnDistance, sigma, base};
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Projection: return "projection";
    case KernelKind::BinetCauchy: return "binet-cauchy";
    case KernelKind::GaussianOnDistance: return "gaussian";
  }
  throw DimensionError("bad KernelKind value");
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "projection") return KernelKind::Projection;
  if (name == "binet-cauchy" || name == "binetcauchy") return KernelKind::BinetCauchy;
  if (name == "gaussian") return KernelKind::GaussianOnDistance;
  throw DataError("unknown kernel kind '" + name + "'");
}

double kernel_eval(const KernelSpec& spec, const GrassmannPoint& x,
                   const GrassmannPoint& y) {
  require_dim(x.n() == y.n() && x.k() == y.k(),
              "kernel_eval: points live on different Grassmannians");
  switch (spec.kind) {
    case KernelKind::Projection:
      return (x.basis().transpose() * y.basis()).squaredNorm();
    case KernelKind::BinetCauchy: {
      const double det = (x.basis().transpose() * y.basis()).determinant();
      return det * det;
    }
    case KernelKind::GaussianOnDistance: {
      const double d = distance(spec.base, x, y);
      return std::exp(-d * d / (2.0 * spec.sigma * spec.sigma));
    }
  }
  throw DimensionError("bad KernelKind value");
}

KernelGram gram(const KernelSpec& spec, const std::vector<GrassmannPoint>& points) {
  require_dim(!points.empty(), "gram: need at least one point");
  const Index n = static_cast<Index>(points.size());
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      const double v = kernel_eval(spec, points[static_cast<size_t>(i)],
                                   points[static_cast<size_t>(j)]);
      k(i, j) = v;
      k(j, i) = v;
    }
  EigResult eig = sym_eig(k);
  const double lo = eig.values.minCoeff();
  const double hi = eig.values.maxCoeff();
  if (lo < -1e-8 * std::max(hi, 0.0))
    throw NumericalError("gram: matrix is not positive semidefinite, eigenvalue " +
                         std::to_string(lo));
  return {std::move(k)};
}

double kernel_distance(const KernelSpec& spec, const GrassmannPoint& x,
                       const GrassmannPoint& y) {
  const double d2 = kernel_eval(spec, x, x) + kernel_eval(spec, y, y) -
                    2.0 * kernel_eval(spec, x, y);
  return std::sqrt(std::max(0.0, d2));
}

}  // namespace grasslearn
