#pragma once

#include <iosfwd>

#include "grasslearn/types.hpp"

namespace grasslearn {

// a = u * s.asDiagonal() * v.transpose(), u: n x r, s: r (descending), v: k x r
// with r = min(n, k). Zero singular values are kept so r is always min(n, k).
struct SvdResult {
  Matrix u;
  Vector s;
  Matrix v;
};

SvdResult svd_compact(const Matrix& a);

// a = q * r with q: n x k orthonormal and r upper triangular, diag(r) >= 0.
// Requires rows >= cols; throws NumericalError naming the first column whose
// pivot falls below 1e-12 * ||a||_F.
struct QrResult {
  Matrix q;
  Matrix r;
};

QrResult qr_thin(const Matrix& a);

// Eigendecomposition of a (near-)symmetric matrix, eigenvalues ascending.
// Input must satisfy ||a - a^T||_max <= 1e-8 and is symmetrized internally.
// Each eigenvector's largest-magnitude entry is made positive so repeated
// runs agree sign for sign.
struct EigResult {
  Vector values;
  Matrix vectors;
};

EigResult sym_eig(const Matrix& a);

// Gauss-Legendre nodes and weights on [a, b], computed by eigendecomposition
// of the Jacobi matrix.
struct Quadrature {
  Vector nodes;
  Vector weights;
};

Quadrature gauss_legendre(int n, double a = 0.0, double b = 1.0);

// CSV matrix codec: comma separated, one row per line, '.' decimal point.
// The reader rejects ragged rows, non-numeric fields and non-finite values,
// with file and line context in the message. The writer round-trips doubles
// exactly (shortest representation that parses back to the same value).
Matrix read_matrix_csv(const std::string& path);
Matrix read_matrix_csv(std::istream& in, const std::string& name);
void write_matrix_csv(const std::string& path, const Matrix& a);
std::string matrix_to_csv(const Matrix& a);

}  // namespace grasslearn
