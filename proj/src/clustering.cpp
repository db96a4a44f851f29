#include "grasslearn/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "grasslearn/gda.hpp"

namespace grasslearn {

Matrix affinity(const Matrix& items, double sigma) {
  require_dim(items.rows() >= 2, "affinity: need at least two points");
  require_dim(sigma > 0.0, "affinity: sigma must be positive");
  require_finite(items, "affinity");
  const Index n = items.rows();
  Matrix w = Matrix::Zero(n, n);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double d2 = (items.row(i) - items.row(j)).squaredNorm();
      const double v = std::exp(-d2 * inv);
      w(i, j) = v;
      w(j, i) = v;
    }
  return w;
}

LaplacianKind laplacian_kind_from_string(const std::string& name) {
  if (name == "unnormalized") return LaplacianKind::Unnormalized;
  if (name == "normalized") return LaplacianKind::NormalizedSymmetric;
  throw DataError("unknown laplacian kind '" + name + "'");
}

std::string to_string(LaplacianKind kind) {
  return kind == LaplacianKind::Unnormalized ? "unnormalized" : "normalized";
}

Matrix laplacian(const Matrix& w, LaplacianKind kind) {
  const Index n = w.rows();
  require_dim(w.cols() == n && n >= 1, "laplacian: affinity must be square");
  require_finite(w, "laplacian");
  require_dim((w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-8,
              "laplacian: affinity must be symmetric");
  require_dim(w.minCoeff() >= 0.0, "laplacian: affinity must be nonnegative");
  require_dim(w.diagonal().cwiseAbs().maxCoeff() == 0.0,
              "laplacian: affinity diagonal must be zero");
  const Vector deg = w.rowwise().sum();
  if (kind == LaplacianKind::Unnormalized) {
    Matrix lap = -w;
    lap.diagonal() += deg;
    return lap;
  }
  // Isolated vertices get 0^{-1/2} := 0, leaving a unit diagonal entry.
  Vector dinv = deg;
  for (Index i = 0; i < n; ++i) dinv[i] = deg[i] > 0.0 ? 1.0 / std::sqrt(deg[i]) : 0.0;
  Matrix lap = -(dinv.asDiagonal() * w * dinv.asDiagonal());
  lap.diagonal() += Vector::Ones(n);
  return lap;
}

Matrix spectral_embed(const Matrix& lap, int k) {
  require_dim(k >= 1 && static_cast<Index>(k) <= lap.rows(),
              "spectral_embed: k must lie in [1, N]");
  EigResult eig = sym_eig(lap);
  return eig.vectors.leftCols(k);
}

namespace {

// tr(U^T L U) + beta * sum_ij h_mu((U U^T)_ij)
struct SparseEmbedObjective : Objective {
  const Matrix& lap;
  double beta;
  double mu;

  SparseEmbedObjective(const Matrix& l, double b, double m)
      : lap(l), beta(b), mu(m) {}

  double value(const GrassmannPoint& x) const override {
    const Matrix& u = x.basis();
    const Matrix m = u * u.transpose();
    const double smooth =
        (m.array().square() + mu * mu).sqrt().sum() - mu * static_cast<double>(m.size());
    return (u.transpose() * lap * u).trace() + beta * smooth;
  }

  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    const Matrix& u = x.basis();
    const Matrix m = u * u.transpose();
    const Matrix h = m.array() / (m.array().square() + mu * mu).sqrt();
    return 2.0 * (lap * u) + 2.0 * beta * (h.cwiseProduct(m) * u);
  }
};

}  // namespace

SparseSpectralResult sparse_spectral(const Matrix& lap,
                                     const SparseSpectralConfig& config) {
  require_dim(config.beta >= 0.0, "sparse_spectral: beta must be nonnegative");
  require_dim(config.mu > 0.0, "sparse_spectral: mu must be positive");
  GrassmannPoint init = GrassmannPoint::from_orthonormal(spectral_embed(lap, config.k));
  SparseEmbedObjective objective(lap, config.beta, config.mu);
  OptimResult opt = minimize(objective, init, config.optim);
  GrassmannPoint u = opt.x;
  return {std::move(u), std::move(opt)};
}

namespace {

std::vector<Index> distinct_rows(const Matrix& rows, double tol) {
  std::vector<Index> reps;
  for (Index i = 0; i < rows.rows(); ++i) {
    bool fresh = true;
    for (Index r : reps)
      if ((rows.row(i) - rows.row(r)).cwiseAbs().maxCoeff() <= tol) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(i);
  }
  return reps;
}

struct LloydOutcome {
  std::vector<int> labels;
  double inertia;
};

LloydOutcome lloyd_once(const Matrix& rows, int k,
                        const std::vector<Index>& seed_rows) {
  const Index n = rows.rows();
  Matrix centers(k, rows.cols());
  for (int c = 0; c < k; ++c) centers.row(c) = rows.row(seed_rows[static_cast<size_t>(c)]);

  std::vector<int> labels(static_cast<size_t>(n), -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (rows.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (rows.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[static_cast<size_t>(i)] != best) {
        labels[static_cast<size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    Matrix sums = Matrix::Zero(k, rows.cols());
    std::vector<Index> counts(static_cast<size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<size_t>(i)]) += rows.row(i);
      ++counts[static_cast<size_t>(labels[static_cast<size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<size_t>(c)] == 0) {
        // Empty cluster: reseed from the point farthest from its center.
        Index far = 0;
        double far_d = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double d =
              (rows.row(i) - centers.row(labels[static_cast<size_t>(i)])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = rows.row(far);
      } else {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<size_t>(c)]);
      }
    }
  }

  double inertia = 0.0;
  for (Index i = 0; i < n; ++i)
    inertia += (rows.row(i) - centers.row(labels[static_cast<size_t>(i)])).squaredNorm();
  return {std::move(labels), inertia};
}

}  // namespace

std::vector<int> cluster_rows(const Matrix& embedding, int k, bool normalize_rows,
                              Rng& rng) {
  require_dim(k >= 1 && static_cast<Index>(k) <= embedding.rows(),
              "cluster_rows: k must lie in [1, N]");
  require_finite(embedding, "cluster_rows");
  Matrix rows = embedding;
  if (normalize_rows) {
    for (Index i = 0; i < rows.rows(); ++i) {
      const double norm = rows.row(i).norm();
      if (norm > 0.0) rows.row(i) /= norm;
    }
  }

  const std::vector<Index> reps = distinct_rows(rows, 1e-9);
  if (static_cast<int>(reps.size()) < k)
    throw NumericalError("cluster_rows: only " + std::to_string(reps.size()) +
                         " distinct rows for " + std::to_string(k) + " clusters");

  LloydOutcome best{{}, std::numeric_limits<double>::infinity()};
  for (int restart = 0; restart < 10; ++restart) {
    // Sample k distinct representatives for the initial centers.
    std::vector<Index> pool = reps;
    std::vector<Index> seeds;
    for (int c = 0; c < k; ++c) {
      const size_t pick = static_cast<size_t>(rng() % pool.size());
      seeds.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    LloydOutcome run = lloyd_once(rows, k, seeds);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best.labels;
}

namespace {

GrassmannPoint extrinsic_mean(const std::vector<GrassmannPoint>& points,
                              const std::vector<Index>& members, Index n, Index k) {
  Matrix sum = Matrix::Zero(n, n);
  for (Index i : members) {
    const Matrix& b = points[static_cast<size_t>(i)].basis();
    sum += b * b.transpose();
  }
  EigResult eig = sym_eig(sum);
  // Top-k eigenvectors; column order within a generator is irrelevant.
  return GrassmannPoint::from_orthonormal(eig.vectors.rightCols(k));
}

}  // namespace

GrassmannKmeansResult grassmann_kmeans(const std::vector<GrassmannPoint>& points,
                                       int n_clusters, int max_iters, Rng& rng) {
  const Index count = static_cast<Index>(points.size());
  require_dim(count >= 1, "grassmann_kmeans: no points");
  require_dim(n_clusters >= 1 && static_cast<Index>(n_clusters) <= count,
              "grassmann_kmeans: cluster count must lie in [1, N]");
  require_dim(max_iters >= 1, "grassmann_kmeans: max_iters must be >= 1");
  const Index n = points.front().n();
  const Index k = points.front().k();
  for (const auto& p : points)
    require_dim(p.n() == n && p.k() == k,
                "grassmann_kmeans: points live on different Grassmannians");

  // Farthest-first initialization over the chordal metric.
  std::vector<GrassmannPoint> centers;
  centers.push_back(points[static_cast<size_t>(rng() % static_cast<uint64_t>(count))]);
  Vector min_d = Vector::Constant(count, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < n_clusters) {
    for (Index i = 0; i < count; ++i) {
      const double d = distance(DistanceMetric::Chordal, points[static_cast<size_t>(i)],
                                centers.back());
      min_d[i] = std::min(min_d[i], d);
    }
    Index far = 0;
    min_d.maxCoeff(&far);
    centers.push_back(points[static_cast<size_t>(far)]);
  }

  std::vector<int> labels(static_cast<size_t>(count), -1);
  std::vector<double> trace;
  int iterations = 0;
  for (int iter = 1; iter <= max_iters; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (Index i = 0; i < count; ++i) {
      int best = 0;
      double best_d =
          distance(DistanceMetric::Chordal, points[static_cast<size_t>(i)], centers[0]);
      for (int c = 1; c < n_clusters; ++c) {
        const double d = distance(DistanceMetric::Chordal,
                                  points[static_cast<size_t>(i)],
                                  centers[static_cast<size_t>(c)]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      objective += best_d * best_d;
      if (labels[static_cast<size_t>(i)] != best) {
        labels[static_cast<size_t>(i)] = best;
        changed = true;
      }
    }
    trace.push_back(objective);
    iterations = iter;
    if (!changed) break;

    for (int c = 0; c < n_clusters; ++c) {
      std::vector<Index> members;
      for (Index i = 0; i < count; ++i)
        if (labels[static_cast<size_t>(i)] == c) members.push_back(i);
      if (members.empty()) {
        // Reseed from the point farthest from its assigned center.
        Index far = 0;
        double far_d = -1.0;
        for (Index i = 0; i < count; ++i) {
          const double d = distance(
              DistanceMetric::Chordal, points[static_cast<size_t>(i)],
              centers[static_cast<size_t>(labels[static_cast<size_t>(i)])]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers[static_cast<size_t>(c)] = points[static_cast<size_t>(far)];
      } else {
        centers[static_cast<size_t>(c)] = extrinsic_mean(points, members, n, k);
      }
    }
  }

  return {std::move(labels), std::move(centers), std::move(trace), iterations};
}

double best_match_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth) {
  require_dim(predicted.size() == truth.size() && !truth.empty(),
              "best_match_accuracy: label vectors must have equal nonzero size");
  const std::vector<int> pc = class_values(predicted);
  const std::vector<int> tc = class_values(truth);
  require_dim(pc.size() <= 9 && tc.size() <= 9,
              "best_match_accuracy: exact matching supports at most 9 classes");

  auto encode = [](const std::vector<int>& labels, const std::vector<int>& classes) {
    std::vector<int> idx(labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
      idx[i] = static_cast<int>(
          std::lower_bound(classes.begin(), classes.end(), labels[i]) -
          classes.begin());
    return idx;
  };
  const std::vector<int> pidx = encode(predicted, pc);
  const std::vector<int> tidx = encode(truth, tc);

  // Try every injective assignment of predicted classes onto truth classes;
  // slots past the truth class count mean "unmatched".
  const int slots = static_cast<int>(std::max(pc.size(), tc.size()));
  std::vector<int> slot(static_cast<size_t>(slots));
  std::iota(slot.begin(), slot.end(), 0);

  size_t best = 0;
  do {
    size_t hits = 0;
    for (size_t i = 0; i < truth.size(); ++i)
      if (slot[static_cast<size_t>(pidx[i])] == tidx[i]) ++hits;
    best = std::max(best, hits);
  } while (std::next_permutation(slot.begin(), slot.end()));

  return static_cast<double>(best) / static_cast<double>(truth.size());
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  require_dim(a.size() == b.size() && !a.empty(),
              "adjusted_rand_index: label vectors must have equal nonzero size");
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows, cols;
  for (size_t i = 0; i < a.size(); ++i) {
    cells[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto choose2 = [](double m) { return m * (m - 1.0) / 2.0; };
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, v] : cells) sum_cells += choose2(v);
  for (const auto& [key, v] : rows) sum_rows += choose2(v);
  for (const auto& [key, v] : cols) sum_cols += choose2(v);
  const double total = choose2(static_cast<double>(a.size()));
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (sum_cells - expected) / (max_index - expected);
}

}  // namespace grasslearn
