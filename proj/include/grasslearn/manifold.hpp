#pragma once

#include <string>
#include <vector>

#include "grasslearn/numerics.hpp"
#include "grasslearn/types.hpp"

namespace grasslearn {

// Six subspace distances, all derived from the principal angles.
enum class DistanceMetric {
  ArcLength,
  FubiniStudy,
  Chordal,
  Projection,
  BinetCauchy,
  Procrustes,
};

DistanceMetric distance_metric_from_string(const std::string& name);
std::string to_string(DistanceMetric metric);
const std::vector<DistanceMetric>& all_distance_metrics();

// A k-dimensional subspace of R^n held as an n x k orthonormal generator.
// The generator is only unique up to right rotation; semantic equality is
// same_subspace, never entrywise comparison.
class GrassmannPoint {
 public:
  // Orthonormalizes span(a) by thin QR. Throws if a column is dependent.
  static GrassmannPoint from_matrix(const Matrix& a);
  // Accepts a matrix that is already orthonormal to 1e-10.
  static GrassmannPoint from_orthonormal(Matrix q);

  const Matrix& basis() const { return basis_; }
  Index n() const { return basis_.rows(); }
  Index k() const { return basis_.cols(); }

 private:
  explicit GrassmannPoint(Matrix q) : basis_(std::move(q)) {}
  Matrix basis_;
};

// Loader for points stored as plain CSV; re-orthonormalizes and reports
// whether the file content was orthonormal already.
struct LoadedPoint {
  GrassmannPoint point;
  bool was_orthonormal;
};

LoadedPoint load_grassmann_csv(const std::string& path);

// Angles ascending in [0, pi/2]; cos(theta_i) are the singular values of
// X^T Y clamped to [0, 1].
struct PrincipalAngles {
  Vector angles;
  Vector cosines() const { return angles.array().cos(); }
};

PrincipalAngles principal_angles(const GrassmannPoint& x, const GrassmannPoint& y);

double distance(DistanceMetric metric, const PrincipalAngles& pa);
double distance(DistanceMetric metric, const GrassmannPoint& x, const GrassmannPoint& y);

bool same_subspace(const GrassmannPoint& x, const GrassmannPoint& y,
                   double tol = 1e-8);

// Horizontal tangent at a base point: delta with base^T delta = 0. Carries
// the compact SVD of delta because every geodesic formula consumes it.
class TangentVector {
 public:
  TangentVector(GrassmannPoint base, Matrix delta);

  const GrassmannPoint& base() const { return base_; }
  const Matrix& delta() const { return delta_; }
  const SvdResult& svd() const { return svd_; }
  double norm() const { return delta_.norm(); }
  TangentVector scaled(double c) const;

 private:
  GrassmannPoint base_;
  Matrix delta_;
  SvdResult svd_;
};

// Removes the component of g inside span(x): delta = g - x (x^T g).
TangentVector project_to_tangent(const GrassmannPoint& x, const Matrix& g);

// Point at parameter t in [0, 1] on the geodesic leaving dir.base() with
// velocity dir.delta(). geodesic_point(dir, 0) returns the base exactly.
GrassmannPoint geodesic_point(const TangentVector& dir, double t);

GrassmannPoint exp_map(const TangentVector& dir);

// Inverse of exp_map. Defined away from the cut locus: throws NumericalError
// when the largest principal angle reaches pi/2 - 1e-8. The singular values
// of the returned delta are the principal angles between x and y.
TangentVector log_map(const GrassmannPoint& x, const GrassmannPoint& y);

// Uniform (rotation invariant) draw: Gaussian matrix followed by thin QR.
GrassmannPoint random_point(Index n, Index k, Rng& rng);

}  // namespace grasslearn
