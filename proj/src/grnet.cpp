#include "grasslearn/grnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grasslearn {

void validate(const GrNetDims& dims) {
  require_dim(dims.n >= 1 && dims.k_in >= 1 && dims.k_in <= dims.n,
              "grnet dims: need n >= k_in >= 1");
  require_dim(dims.m >= dims.k_in,
              "grnet dims: filter output rows m must be >= k_in");
  require_dim(dims.d >= 1 && dims.d <= dims.m, "grnet dims: need 1 <= d <= m");
  require_dim(dims.classes >= 2, "grnet dims: need at least two classes");
  require_dim(dims.filters >= 1, "grnet dims: need at least one filter");
}

namespace {

Index feature_size(const GrNetDims& dims) { return dims.m * (dims.m + 1) / 2; }

Vector upper_triangle_features(const Matrix& sym) {
  const Index m = sym.rows();
  Vector out(m * (m + 1) / 2);
  const double root2 = std::sqrt(2.0);
  Index at = 0;
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j)
      out[at++] = i == j ? sym(i, j) : root2 * sym(i, j);
  return out;
}

Index label_index(const GrNetParams& params, int label) {
  const auto it = std::lower_bound(params.class_labels.begin(),
                                   params.class_labels.end(), label);
  require_dim(it != params.class_labels.end() && *it == label,
              "grnet: label " + std::to_string(label) +
                  " is not among the model classes");
  return it - params.class_labels.begin();
}

}  // namespace

GrNetParams grnet_init(const GrNetDims& dims, Rng& rng) {
  validate(dims);
  GrNetParams params;
  params.dims = dims;
  for (int f = 0; f < dims.filters; ++f)
    params.filters.push_back(random_gaussian(dims.m, dims.n, rng) /
                             std::sqrt(static_cast<double>(dims.n)));
  params.fc = 0.01 * random_gaussian(feature_size(dims) + 1, dims.classes, rng);
  for (int c = 0; c < dims.classes; ++c) params.class_labels.push_back(c);
  return params;
}

GrNetActivation grnet_forward(const GrNetParams& params, const GrassmannPoint& x) {
  const GrNetDims& dims = params.dims;
  validate(dims);
  require_dim(x.n() == dims.n && x.k() == dims.k_in,
              "grnet_forward: input lives on the wrong Grassmannian");
  require_dim(static_cast<int>(params.filters.size()) == dims.filters,
              "grnet_forward: filter count mismatch");
  require_dim(params.fc.rows() == feature_size(dims) + 1 &&
                  params.fc.cols() == dims.classes,
              "grnet_forward: fc shape mismatch");

  GrNetActivation act;
  act.pooled = Matrix::Zero(dims.m, dims.m);
  for (int f = 0; f < dims.filters; ++f) {
    const Matrix a = params.filters[static_cast<size_t>(f)] * x.basis();
    QrResult qr = [&] {
      try {
        return qr_thin(a);
      } catch (const NumericalError& e) {
        throw NumericalError("grnet_forward: filter " + std::to_string(f) +
                             " produced a rank-deficient response (" + e.what() +
                             ")");
      }
    }();
    act.pooled += qr.q * qr.q.transpose();
    act.q.push_back(std::move(qr.q));
  }
  act.pooled /= static_cast<double>(dims.filters);

  const EigResult eig = sym_eig(act.pooled);
  act.u = Matrix(dims.m, dims.d);
  for (Index j = 0; j < dims.d; ++j) act.u.col(j) = eig.vectors.col(dims.m - 1 - j);
  act.eigengap = dims.d < dims.m
                     ? eig.values[dims.m - dims.d] - eig.values[dims.m - dims.d - 1]
                     : std::numeric_limits<double>::infinity();
  act.gap_warning = act.eigengap < 1e-6;

  act.final_proj = act.u * act.u.transpose();
  act.features = upper_triangle_features(act.final_proj);
  act.logits = params.fc.topRows(feature_size(dims)).transpose() * act.features +
               params.fc.row(feature_size(dims)).transpose();
  return act;
}

double grnet_loss(const GrNetParams& params, const LabeledGrassmannSet& data) {
  validate(data);
  double total = 0.0;
  for (size_t i = 0; i < data.points.size(); ++i) {
    const Vector logits = grnet_forward(params, data.points[i]).logits;
    const double peak = logits.maxCoeff();
    const double lse = peak + std::log((logits.array() - peak).exp().sum());
    total += lse - logits[label_index(params, data.labels[i])];
  }
  return total / static_cast<double>(data.points.size());
}

namespace {

Index param_count(const GrNetParams& params) {
  Index count = 0;
  for (const Matrix& w : params.filters) count += w.size();
  return count + params.fc.size();
}

double* param_entry(GrNetParams& params, Index flat) {
  for (Matrix& w : params.filters) {
    if (flat < w.size()) return w.data() + flat;
    flat -= w.size();
  }
  return params.fc.data() + flat;
}

}  // namespace

Vector grnet_fd_gradient(const GrNetParams& params, const LabeledGrassmannSet& data,
                         double fd_step) {
  require_dim(fd_step > 0.0, "grnet_fd_gradient: fd_step must be positive");
  GrNetParams probe = params;
  const Index count = param_count(probe);
  Vector grad(count);
  for (Index i = 0; i < count; ++i) {
    double* entry = param_entry(probe, i);
    const double saved = *entry;
    *entry = saved + fd_step;
    const double up = grnet_loss(probe, data);
    *entry = saved - fd_step;
    const double down = grnet_loss(probe, data);
    *entry = saved;
    grad[i] = (up - down) / (2.0 * fd_step);
  }
  return grad;
}

namespace {

void apply_step(GrNetParams& params, const Vector& grad, double step) {
  Index at = 0;
  for (Matrix& w : params.filters) {
    w -= step * Eigen::Map<const Matrix>(grad.data() + at, w.rows(), w.cols());
    at += w.size();
  }
  params.fc -= step * Eigen::Map<const Matrix>(grad.data() + at, params.fc.rows(),
                                               params.fc.cols());
}

}  // namespace

GrNetTrainResult grnet_train(const GrNetParams& initial,
                             const LabeledGrassmannSet& data,
                             const GrNetTrainConfig& config) {
  require_dim(config.epochs >= 1, "grnet_train: epochs must be >= 1");
  require_dim(config.step > 0.0, "grnet_train: step must be positive");
  require_dim(config.min_step > 0.0 && config.min_step <= config.step,
              "grnet_train: need 0 < min_step <= step");
  validate(data, 2);

  GrNetParams params = initial;
  // Bind the logit columns to the classes present in the data.
  params.class_labels = class_values(data.labels);
  require_dim(static_cast<int>(params.class_labels.size()) == params.dims.classes,
              "grnet_train: data has " + std::to_string(params.class_labels.size()) +
                  " classes, model expects " + std::to_string(params.dims.classes));

  double loss = grnet_loss(params, data);
  if (!std::isfinite(loss))
    throw NumericalError("grnet_train: initial loss is not finite");

  GrNetTrainResult result{params, {loss}, loss};
  double step = config.step;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const Vector grad = grnet_fd_gradient(params, data, config.fd_step);
    bool accepted = false;
    while (step >= config.min_step) {
      GrNetParams candidate = params;
      apply_step(candidate, grad, step);
      const double trial = grnet_loss(candidate, data);
      if (std::isfinite(trial) && trial <= loss) {
        params = std::move(candidate);
        loss = trial;
        accepted = true;
        break;
      }
      step *= 0.5;  // too aggressive or NaN, halve and reuse the gradient
    }
    if (!accepted) {
      if (!std::isfinite(grnet_loss(params, data)))
        throw NumericalError("grnet_train: loss stayed non-finite");
      break;  // step underflow at a (near) stationary point
    }
    result.loss_trace.push_back(loss);
    if (loss < result.best_loss) {
      result.best_loss = loss;
      result.params = params;
    }
  }
  return result;
}

std::vector<int> grnet_predict(const GrNetParams& params,
                               const std::vector<GrassmannPoint>& points) {
  std::vector<int> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const Vector logits = grnet_forward(params, p).logits;
    Index best = 0;
    logits.maxCoeff(&best);
    out.push_back(params.class_labels[static_cast<size_t>(best)]);
  }
  return out;
}

double grnet_accuracy(const GrNetParams& params, const LabeledGrassmannSet& data) {
  validate(data);
  const std::vector<int> predicted = grnet_predict(params, data.points);
  size_t hits = 0;
  for (size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == data.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

}  // namespace grasslearn
