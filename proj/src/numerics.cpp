#include "grasslearn/numerics.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace grasslearn {

SvdResult svd_compact(const Matrix& a) {
  require_dim(a.rows() >= 1 && a.cols() >= 1, "svd_compact: empty matrix");
  require_finite(a, "svd_compact");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("svd_compact: decomposition did not converge");
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

QrResult qr_thin(const Matrix& a) {
  require_dim(a.rows() >= a.cols() && a.cols() >= 1,
              "qr_thin: need rows >= cols >= 1, got " + std::to_string(a.rows()) +
                  "x" + std::to_string(a.cols()));
  require_finite(a, "qr_thin");
  const Index n = a.rows(), k = a.cols();
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  const double scale = a.norm();
  for (Index i = 0; i < k; ++i) {
    if (std::abs(r(i, i)) < 1e-12 * scale)
      throw NumericalError("qr_thin: rank deficient at column " + std::to_string(i));
    if (r(i, i) < 0) {
      q.col(i) = -q.col(i);
      r.row(i) = -r.row(i);
    }
  }
  return {std::move(q), std::move(r)};
}

EigResult sym_eig(const Matrix& a) {
  require_dim(a.rows() == a.cols() && a.rows() >= 1, "sym_eig: matrix must be square");
  require_finite(a, "sym_eig");
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8)
    throw DimensionError("sym_eig: matrix is not symmetric, ||a - a^T||_max = " +
                         std::to_string(asym));
  Matrix s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  if (eig.info() != Eigen::Success)
    throw NumericalError("sym_eig: eigendecomposition did not converge");
  Matrix vecs = eig.eigenvectors();
  // Deterministic sign: largest-magnitude entry of each eigenvector positive.
  for (Index j = 0; j < vecs.cols(); ++j) {
    Index imax = 0;
    vecs.col(j).cwiseAbs().maxCoeff(&imax);
    if (vecs(imax, j) < 0) vecs.col(j) = -vecs.col(j);
  }
  return {eig.eigenvalues(), std::move(vecs)};
}

Quadrature gauss_legendre(int n, double a, double b) {
  require_dim(n >= 1, "gauss_legendre: need at least one node");
  require_dim(b > a, "gauss_legendre: need b > a");
  // Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
  // matrix, weights come from the first eigenvector components.
  Matrix jac = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double beta = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i - 1, i) = beta;
    jac(i, i - 1) = beta;
  }
  EigResult eig = sym_eig(jac);
  Vector nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    const double t = eig.values[i];  // on [-1, 1], ascending
    nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * t;
    const double v0 = eig.vectors(0, i);
    weights[i] = (b - a) * v0 * v0;  // 2 * v0^2 scaled by (b - a) / 2
  }
  return {std::move(nodes), std::move(weights)};
}

namespace {

double parse_field(const std::string& tok, const std::string& name, size_t line,
                   size_t col) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r'))
    --last;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw DataError(name + ": line " + std::to_string(line) + ", field " +
                    std::to_string(col) + ": not a number: '" + tok + "'");
  if (!std::isfinite(value))
    throw DataError(name + ": line " + std::to_string(line) + ", field " +
                    std::to_string(col) + ": non-finite value");
  return value;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    size_t start = 0, col = 0;
    while (true) {
      ++col;
      const size_t comma = line.find(',', start);
      const std::string tok = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      row.push_back(parse_field(tok, name, lineno, col));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError(name + ": line " + std::to_string(lineno) + ": ragged row, " +
                      std::to_string(row.size()) + " fields where first row has " +
                      std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(name + ": no rows");
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      a(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return a;
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_matrix_csv(in, path);
}

std::string matrix_to_csv(const Matrix& a) {
  std::string out;
  char buf[64];
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), a(i, j));
      assert(ec == std::errc());
      out.append(buf, ptr);
      out.push_back(j + 1 < a.cols() ? ',' : '\n');
    }
  }
  return out;
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
  require_finite(a, "write_matrix_csv(" + path + ")");
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << matrix_to_csv(a);
  if (!out) throw DataError("failed writing " + path);
}

}  // namespace grasslearn
