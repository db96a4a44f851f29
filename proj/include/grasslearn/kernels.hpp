#pragma once

#include <vector>

#include "grasslearn/manifold.hpp"

namespace grasslearn {

enum class KernelKind { Projection, BinetCauchy, GaussianOnDistance };

// Positive definite kernels on the Grassmannian. Gaussian-on-distance is only
// admitted over the projection and chordal metrics; other bases can produce
// indefinite Gram matrices and are rejected at construction.
struct KernelSpec {
  KernelKind kind;
  double sigma;
  DistanceMetric base;

  static KernelSpec projection();
  static KernelSpec binet_cauchy();
  static KernelSpec gaussian(double sigma, DistanceMetric base);
};

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

double kernel_eval(const KernelSpec& spec, const GrassmannPoint& x,
                   const GrassmannPoint& y);

struct KernelGram {
  Matrix entries;  // symmetric, PSD up to -1e-8 * lambda_max
};

// Evaluates all pairs and verifies positive semidefiniteness; throws
// NumericalError naming the offending eigenvalue otherwise.
KernelGram gram(const KernelSpec& spec, const std::vector<GrassmannPoint>& points);

// Distance induced by the kernel embedding, sqrt clamped at zero.
double kernel_distance(const KernelSpec& spec, const GrassmannPoint& x,
                       const GrassmannPoint& y);

}  // namespace grasslearn
