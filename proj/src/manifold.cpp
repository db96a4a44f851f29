#include "grasslearn/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace grasslearn {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void require_same_shape(const GrassmannPoint& x, const GrassmannPoint& y) {
  require_dim(x.n() == y.n() && x.k() == y.k(),
              "points live on different Grassmannians: " + std::to_string(x.n()) +
                  "x" + std::to_string(x.k()) + " vs " + std::to_string(y.n()) +
                  "x" + std::to_string(y.k()));
}

}  // namespace

DistanceMetric distance_metric_from_string(const std::string& name) {
  if (name == "arc-length" || name == "arclength") return DistanceMetric::ArcLength;
  if (name == "fubini-study" || name == "fubinistudy")
    return DistanceMetric::FubiniStudy;
  if (name == "chordal") return DistanceMetric::Chordal;
  if (name == "projection") return DistanceMetric::Projection;
  if (name == "binet-cauchy" || name == "binetcauchy")
    return DistanceMetric::BinetCauchy;
  if (name == "procrustes") return DistanceMetric::Procrustes;
  throw DataError("unknown distance metric '" + name + "'");
}

std::string to_string(DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::ArcLength: return "arc-length";
    case DistanceMetric::FubiniStudy: return "fubini-study";
    case DistanceMetric::Chordal: return "chordal";
    case DistanceMetric::Projection: return "projection";
    case DistanceMetric::BinetCauchy: return "binet-cauchy";
    case DistanceMetric::Procrustes: return "procrustes";
  }
  throw DimensionError("bad DistanceMetric value");
}

const std::vector<DistanceMetric>& all_distance_metrics() {
  static const std::vector<DistanceMetric> metrics = {
      DistanceMetric::ArcLength,  DistanceMetric::FubiniStudy,
      DistanceMetric::Chordal,    DistanceMetric::Projection,
      DistanceMetric::BinetCauchy, DistanceMetric::Procrustes};
  return metrics;
}

GrassmannPoint GrassmannPoint::from_matrix(const Matrix& a) {
  require_dim(a.rows() >= a.cols() && a.cols() >= 1,
              "GrassmannPoint: generator must be n x k with n >= k >= 1");
  require_finite(a, "GrassmannPoint");
  return GrassmannPoint(qr_thin(a).q);
}

GrassmannPoint GrassmannPoint::from_orthonormal(Matrix q) {
  require_dim(q.rows() >= q.cols() && q.cols() >= 1,
              "GrassmannPoint: generator must be n x k with n >= k >= 1");
  require_finite(q, "GrassmannPoint");
  const double defect =
      (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw DimensionError("from_orthonormal: columns not orthonormal, defect " +
                         std::to_string(defect));
  return GrassmannPoint(std::move(q));
}

LoadedPoint load_grassmann_csv(const std::string& path) {
  Matrix a = read_matrix_csv(path);
  const double defect =
      (a.transpose() * a - Matrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
  return {GrassmannPoint::from_matrix(a), defect <= 1e-10};
}

PrincipalAngles principal_angles(const GrassmannPoint& x, const GrassmannPoint& y) {
  require_same_shape(x, y);
  const Matrix b = x.basis().transpose() * y.basis();
  SvdResult cos_svd = svd_compact(b);
  // Cosines lose small angles to rounding near 1; the residual's singular
  // values are the sines of the same angles and keep them at full precision.
  SvdResult sin_svd = svd_compact(y.basis() - x.basis() * b);
  const Index k = cos_svd.s.size();
  Vector angles(k);
  // Cosines descend while the matching sines ascend, so angle i pairs cosine
  // i with sine k-1-i; angles come out ascending either way.
  for (Index i = 0; i < k; ++i) {
    const double c = std::clamp(cos_svd.s[i], 0.0, 1.0);
    const double s = std::clamp(sin_svd.s[k - 1 - i], 0.0, 1.0);
    angles[i] = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  return {std::move(angles)};
}

double distance(DistanceMetric metric, const PrincipalAngles& pa) {
  const auto& th = pa.angles;
  switch (metric) {
    case DistanceMetric::ArcLength:
      return std::sqrt(th.squaredNorm());
    case DistanceMetric::FubiniStudy: {
      const double p = th.array().cos().prod();
      return std::acos(std::clamp(std::abs(p), 0.0, 1.0));
    }
    case DistanceMetric::Chordal:
      return 2.0 * std::sqrt((th / 2.0).array().sin().square().sum());
    case DistanceMetric::Projection:
      return std::sqrt(th.array().sin().square().sum());
    case DistanceMetric::BinetCauchy: {
      const double p = th.array().cos().square().prod();
      return std::sqrt(std::max(0.0, 1.0 - p));
    }
    case DistanceMetric::Procrustes:
      return distance(DistanceMetric::Chordal, pa) / std::sqrt(2.0);
  }
  throw DimensionError("bad DistanceMetric value");
}

double distance(DistanceMetric metric, const GrassmannPoint& x,
                const GrassmannPoint& y) {
  return distance(metric, principal_angles(x, y));
}

bool same_subspace(const GrassmannPoint& x, const GrassmannPoint& y, double tol) {
  return distance(DistanceMetric::Projection, x, y) <= tol;
}

TangentVector::TangentVector(GrassmannPoint base, Matrix delta)
    : base_(std::move(base)), delta_(std::move(delta)), svd_{} {
  require_dim(delta_.rows() == base_.n() && delta_.cols() == base_.k(),
              "TangentVector: delta shape must match the base generator");
  require_finite(delta_, "TangentVector");
  const double tangency = (base_.basis().transpose() * delta_).cwiseAbs().maxCoeff();
  if (tangency > 1e-8)
    throw DimensionError("TangentVector: not horizontal, ||X^T delta||_max = " +
                         std::to_string(tangency));
  svd_ = svd_compact(delta_);
}

TangentVector TangentVector::scaled(double c) const {
  TangentVector out = *this;
  out.delta_ *= c;
  out.svd_.s *= std::abs(c);
  if (c < 0) out.svd_.v = -out.svd_.v;
  return out;
}

TangentVector project_to_tangent(const GrassmannPoint& x, const Matrix& g) {
  require_dim(g.rows() == x.n() && g.cols() == x.k(),
              "project_to_tangent: matrix shape must match the generator");
  require_finite(g, "project_to_tangent");
  Matrix delta = g - x.basis() * (x.basis().transpose() * g);
  return TangentVector(x, std::move(delta));
}

GrassmannPoint geodesic_point(const TangentVector& dir, double t) {
  if (t < 0.0 || t > 1.0)
    throw DimensionError("geodesic_point: t must lie in [0, 1], got " +
                         std::to_string(t));
  const GrassmannPoint& x = dir.base();
  if (t == 0.0 || dir.svd().s.maxCoeff() == 0.0) return x;

  const SvdResult& svd = dir.svd();
  const Vector ct = (svd.s * t).array().cos();
  const Vector st = (svd.s * t).array().sin();
  // Zero singular directions contribute cos = 1, sin = 0, so arbitrary SVD
  // completions in u never leak into the result.
  Matrix phi = (x.basis() * svd.v) * ct.asDiagonal() * svd.v.transpose() +
               svd.u * st.asDiagonal() * svd.v.transpose();
  // Rounding in the composition leaves a small orthonormality defect; left
  // uncorrected it biases objective values and stalls line searches, so the
  // result is always re-orthonormalized.
  return GrassmannPoint::from_orthonormal(qr_thin(phi).q);
}

GrassmannPoint exp_map(const TangentVector& dir) { return geodesic_point(dir, 1.0); }

TangentVector log_map(const GrassmannPoint& x, const GrassmannPoint& y) {
  require_same_shape(x, y);
  PrincipalAngles pa = principal_angles(x, y);
  if (pa.angles.maxCoeff() >= kHalfPi - 1e-8)
    throw NumericalError(
        "log_map: pair at or beyond the cut locus (largest principal angle " +
        std::to_string(pa.angles.maxCoeff()) + ")");

  // b = y (x^T y)^{-1} - x has singular values tan(theta_i); arctangent of
  // the spectrum yields the tangent whose geodesic reaches span(y) at t = 1.
  const Matrix m = x.basis().transpose() * y.basis();
  Matrix b = m.transpose().partialPivLu().solve(y.basis().transpose()).transpose() -
             x.basis();
  SvdResult svd = svd_compact(b);
  Vector theta = svd.s.array().atan();
  Matrix delta = svd.u * theta.asDiagonal() * svd.v.transpose();
  return TangentVector(x, std::move(delta));
}

GrassmannPoint random_point(Index n, Index k, Rng& rng) {
  require_dim(n >= k && k >= 1, "random_point: need n >= k >= 1");
  Matrix q = qr_thin(random_gaussian(n, k, rng)).q;
  // Canonical column signs; a subspace does not care, tests do.
  for (Index j = 0; j < k; ++j) {
    Index imax = 0;
    q.col(j).cwiseAbs().maxCoeff(&imax);
    if (q(imax, j) < 0) q.col(j) = -q.col(j);
  }
  return GrassmannPoint::from_orthonormal(std::move(q));
}

}  // namespace grasslearn
