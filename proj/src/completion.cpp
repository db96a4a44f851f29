#include "grasslearn/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grasslearn {

MaskedMatrix make_masked(Matrix values, Matrix mask) {
  require_dim(values.rows() == mask.rows() && values.cols() == mask.cols(),
              "masked matrix: values and mask shapes differ");
  require_dim(values.rows() >= 1 && values.cols() >= 1, "masked matrix: empty");
  for (Index i = 0; i < mask.rows(); ++i)
    for (Index j = 0; j < mask.cols(); ++j) {
      const double m = mask(i, j);
      if (m != 0.0 && m != 1.0)
        throw DataError("masked matrix: mask entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is " + std::to_string(m) +
                        ", must be 0 or 1");
      if (m == 1.0 && !std::isfinite(values(i, j)))
        throw DataError("masked matrix: observed entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is not finite");
      // Hidden entries are stored as exact zeros, whatever the input held.
      if (m == 0.0) values(i, j) = 0.0;
    }
  return {std::move(values), std::move(mask)};
}

Matrix mask_apply(const MaskedMatrix& m) {
  // select instead of a product: a product would keep NaN from hidden slots.
  return (m.mask.array() == 1.0).select(m.values, 0.0);
}

CompletionObjective completion_objective_from_string(const std::string& name) {
  if (name == "frobenius") return CompletionObjective::Frobenius;
  if (name == "projection") return CompletionObjective::Projection;
  throw DataError("unknown completion objective '" + name + "'");
}

std::string to_string(CompletionObjective kind) {
  return kind == CompletionObjective::Frobenius ? "frobenius" : "projection";
}

namespace {

std::vector<Index> observed_rows(const MaskedMatrix& m, Index col) {
  std::vector<Index> rows;
  for (Index i = 0; i < m.mask.rows(); ++i)
    if (m.mask(i, col) == 1.0) rows.push_back(i);
  return rows;
}

}  // namespace

FrobeniusEval objective_frobenius(const GrassmannPoint& u, const MaskedMatrix& m) {
  require_dim(u.n() == m.values.rows(),
              "objective_frobenius: subspace and data row counts differ");
  const Index r = u.k();
  const Index cols = m.values.cols();
  FrobeniusEval out{0.0, Matrix::Zero(cols, r), {}};
  for (Index j = 0; j < cols; ++j) {
    const std::vector<Index> rows = observed_rows(m, j);
    if (rows.empty()) {
      out.underdetermined.push_back(j);
      continue;
    }
    Matrix a(static_cast<Index>(rows.size()), r);
    Vector b(static_cast<Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      a.row(static_cast<Index>(i)) = u.basis().row(rows[i]);
      b[static_cast<Index>(i)] = m.values(rows[i], j);
    }
    // Minimum norm solution covers the underdetermined and rank deficient cases.
    Vector w = a.completeOrthogonalDecomposition().solve(b);
    out.value += (a * w - b).squaredNorm();
    out.w.row(j) = w.transpose();
    if (static_cast<Index>(rows.size()) < r) out.underdetermined.push_back(j);
  }
  return out;
}

double objective_projection(const GrassmannPoint& u, const MaskedMatrix& m) {
  require_dim(u.n() == m.values.rows(),
              "objective_projection: subspace and data row counts differ");
  const Index n = m.values.rows();
  double total = 0.0;
  for (Index j = 0; j < m.values.cols(); ++j) {
    Vector filled = m.values.col(j).cwiseProduct(m.mask.col(j));
    const double norm = filled.norm();
    if (norm == 0.0) continue;  // nothing observed, or observed all zero
    filled /= norm;
    std::vector<Index> missing;
    for (Index i = 0; i < n; ++i)
      if (m.mask(i, j) == 0.0) missing.push_back(i);
    // The zero fill is orthogonal to every missing-row axis, so the span
    // basis needs no extra orthonormalization.
    Matrix span(n, 1 + static_cast<Index>(missing.size()));
    span.col(0) = filled;
    span.rightCols(static_cast<Index>(missing.size())).setZero();
    for (size_t i = 0; i < missing.size(); ++i)
      span(missing[i], 1 + static_cast<Index>(i)) = 1.0;
    const double smax = svd_compact(span.transpose() * u.basis()).s[0];
    total += std::clamp(1.0 - smax, 0.0, 1.0);
  }
  return total;
}

namespace {

struct FrobObjective : Objective {
  const MaskedMatrix& m;
  explicit FrobObjective(const MaskedMatrix& masked) : m(masked) {}

  double value(const GrassmannPoint& x) const override {
    return objective_frobenius(x, m).value;
  }

  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    const FrobeniusEval eval = objective_frobenius(x, m);
    Matrix grad = Matrix::Zero(x.n(), x.k());
    for (Index j = 0; j < m.values.cols(); ++j) {
      // Residual of the inner solve, scattered over the observed rows; the
      // minimizing w makes the inner derivative vanish (envelope argument).
      for (Index i = 0; i < x.n(); ++i) {
        if (m.mask(i, j) != 1.0) continue;
        const double resid = m.values(i, j) - x.basis().row(i).dot(eval.w.row(j));
        grad.row(i) -= 2.0 * resid * eval.w.row(j);
      }
    }
    return grad;
  }
};

struct ProjObjective : Objective {
  const MaskedMatrix& m;
  explicit ProjObjective(const MaskedMatrix& masked) : m(masked) {}

  double value(const GrassmannPoint& x) const override {
    return objective_projection(x, m);
  }

  Matrix euclidean_grad(const GrassmannPoint& x) const override {
    const Index n = m.values.rows();
    Matrix grad = Matrix::Zero(x.n(), x.k());
    for (Index j = 0; j < m.values.cols(); ++j) {
      Vector filled = m.values.col(j).cwiseProduct(m.mask.col(j));
      const double norm = filled.norm();
      if (norm == 0.0) continue;
      filled /= norm;
      std::vector<Index> missing;
      for (Index i = 0; i < n; ++i)
        if (m.mask(i, j) == 0.0) missing.push_back(i);
      Matrix span(n, 1 + static_cast<Index>(missing.size()));
      span.col(0) = filled;
      span.rightCols(static_cast<Index>(missing.size())).setZero();
      for (size_t i = 0; i < missing.size(); ++i)
        span(missing[i], 1 + static_cast<Index>(i)) = 1.0;
      const SvdResult svd = svd_compact(span.transpose() * x.basis());
      if (svd.s[0] >= 1.0) continue;  // clamped region, flat
      // d sigma_max / dU = span * u1 * v1^T
      grad -= span * svd.u.col(0) * svd.v.col(0).transpose();
    }
    return grad;
  }
};

}  // namespace

CompletionResult complete_one(const MaskedMatrix& m, int rank,
                              const CompletionConfig& config, uint64_t seed) {
  require_dim(rank >= 1 && static_cast<Index>(rank) <= std::min(m.values.rows(),
                                                               m.values.cols()),
              "complete: rank must lie in [1, min(n, k)]");
  Rng rng(seed);
  const GrassmannPoint init = random_point(m.values.rows(), rank, rng);

  OptimResult opt = [&] {
    if (config.kind == CompletionObjective::Frobenius) {
      FrobObjective objective(m);
      return minimize(objective, init, config.optim);
    }
    ProjObjective objective(m);
    return minimize(objective, init, config.optim);
  }();

  const FrobeniusEval fit = objective_frobenius(opt.x, m);
  const double residual = config.kind == CompletionObjective::Frobenius
                              ? fit.value
                              : objective_projection(opt.x, m);
  Matrix completed = opt.x.basis() * fit.w.transpose();
  return {opt.x,      fit.w,                std::move(completed), residual,
          opt.status, std::move(opt.trace), {residual},           0};
}

CompletionResult complete(const MaskedMatrix& m, int rank,
                          const CompletionConfig& config, Rng& rng) {
  require_dim(config.restarts >= 1, "complete: need at least one restart");
  std::vector<uint64_t> seeds;
  for (int i = 0; i < config.restarts; ++i) seeds.push_back(rng());

  std::vector<double> values;
  CompletionResult best{GrassmannPoint::from_orthonormal(
                            Matrix::Identity(m.values.rows(), rank)),
                        {}, {}, std::numeric_limits<double>::infinity(),
                        OptimStatus::IterationCap, {}, {}, -1};
  for (int i = 0; i < config.restarts; ++i) {
    CompletionResult run = complete_one(m, rank, config, seeds[static_cast<size_t>(i)]);
    values.push_back(run.residual);
    if (run.residual < best.residual) {
      best = std::move(run);
      best.best_restart = i;
    }
  }
  best.restart_values = std::move(values);
  return best;
}

}  // namespace grasslearn
