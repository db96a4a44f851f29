#pragma once

#include <Eigen/Dense>
#include <random>
#include <stdexcept>
#include <string>

namespace grasslearn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

// Error taxonomy, kept to three classes because the CLI maps them onto exit
// codes: bad shapes or arguments, bad data content, numerical failure.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

inline void require_dim(bool ok, const std::string& msg) {
  if (!ok) throw DimensionError(msg);
}

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

inline void require_finite(const Matrix& a, const std::string& what) {
  if (!a.allFinite()) throw DataError(what + ": non-finite entries");
}

// Standard normal entries. All randomized code takes an explicit Rng so a
// fixed seed gives a bit-identical repeat.
inline Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = gauss(rng);
  return a;
}

}  // namespace grasslearn
