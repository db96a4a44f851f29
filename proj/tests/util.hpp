#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "grasslearn/manifold.hpp"

namespace grasslearn::testing {

inline double ortho_defect(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols()))
      .cwiseAbs()
      .maxCoeff();
}

// Random k x k rotation; right-multiplying a generator keeps the subspace.
inline Matrix random_rotation(Index k, Rng& rng) {
  Matrix q = qr_thin(random_gaussian(k, k, rng)).q;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// Self-deleting scratch directory for file round trips and CLI runs.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "grasslearn_test_XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace grasslearn::testing
