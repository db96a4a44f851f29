#include "grasslearn/serialize.hpp"

#include <set>

namespace grasslearn {

namespace {

void check_fields(const Json& j, const std::set<std::string>& known,
                  const std::string& what) {
  if (!j.is_object()) throw DataError(what + ": expected a JSON object");
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw DataError(what + ": unknown field '" + item.key() + "'");
}

double number_field(const Json& j, const std::string& key, double fallback,
                    const std::string& what) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw DataError(what + ": field '" + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw DataError(what + ": expected a non-empty array of rows");
  const size_t cols = j[0].size();
  Matrix a(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw DataError(what + ": ragged row " + std::to_string(i));
    for (size_t c = 0; c < cols; ++c) {
      if (!j[i][c].is_number())
        throw DataError(what + ": non-numeric entry at (" + std::to_string(i) + "," +
                        std::to_string(c) + ")");
      a(static_cast<Index>(i), static_cast<Index>(c)) = j[i][c].get<double>();
    }
  }
  require_finite(a, what);
  return a;
}

OptimConfig optim_config_from_json(const Json& j) {
  check_fields(j, {"max_iters", "grad_tol", "armijo_c", "backtrack", "init_step",
                   "min_step"},
               "optim config");
  OptimConfig config;
  if (j.contains("max_iters")) {
    if (!j["max_iters"].is_number_integer())
      throw DataError("optim config: field 'max_iters' must be an integer");
    config.max_iters = j["max_iters"].get<int>();
  }
  config.grad_tol = number_field(j, "grad_tol", config.grad_tol, "optim config");
  config.armijo_c = number_field(j, "armijo_c", config.armijo_c, "optim config");
  config.backtrack = number_field(j, "backtrack", config.backtrack, "optim config");
  config.init_step = number_field(j, "init_step", config.init_step, "optim config");
  config.min_step = number_field(j, "min_step", config.min_step, "optim config");
  validate(config);
  return config;
}

Json optim_config_to_json(const OptimConfig& config) {
  return Json{{"max_iters", config.max_iters},   {"grad_tol", config.grad_tol},
              {"armijo_c", config.armijo_c},     {"backtrack", config.backtrack},
              {"init_step", config.init_step},   {"min_step", config.min_step}};
}

KernelSpec kernel_spec_from_json(const Json& j) {
  check_fields(j, {"kind", "sigma", "base"}, "kernel spec");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw DataError("kernel spec: field 'kind' must be a string");
  const KernelKind kind = kernel_kind_from_string(j["kind"].get<std::string>());
  if (kind != KernelKind::GaussianOnDistance) {
    if (j.contains("sigma") || j.contains("base"))
      throw DataError("kernel spec: sigma and base only apply to the gaussian kind");
    return kind == KernelKind::Projection ? KernelSpec::projection()
                                          : KernelSpec::binet_cauchy();
  }
  const double sigma = number_field(j, "sigma", 0.0, "kernel spec");
  if (sigma <= 0.0) throw DataError("kernel spec: gaussian kind needs sigma > 0");
  DistanceMetric base = DistanceMetric::Projection;
  if (j.contains("base")) {
    if (!j["base"].is_string())
      throw DataError("kernel spec: field 'base' must be a string");
    base = distance_metric_from_string(j["base"].get<std::string>());
  }
  return KernelSpec::gaussian(sigma, base);
}

Json kernel_spec_to_json(const KernelSpec& spec) {
  Json j{{"kind", to_string(spec.kind)}};
  if (spec.kind == KernelKind::GaussianOnDistance) {
    j["sigma"] = spec.sigma;
    j["base"] = to_string(spec.base);
  }
  return j;
}

Json gda_model_to_json(const GdaModel& model) {
  return Json{{"gram", matrix_to_json(model.gram)},
              {"alpha", matrix_to_json(model.alpha)},
              {"quotients", std::vector<double>(model.quotients.begin(),
                                                model.quotients.end())},
              {"epsilon", model.epsilon},
              {"train_labels", model.train_labels},
              {"classes", model.classes},
              {"class_means", matrix_to_json(model.class_means)},
              {"kernel", kernel_spec_to_json(model.spec)}};
}

GdaModel gda_model_from_json(const Json& j) {
  check_fields(j, {"gram", "alpha", "quotients", "epsilon", "train_labels",
                   "classes", "class_means", "kernel"},
               "gda model");
  for (const char* key : {"gram", "alpha", "quotients", "epsilon", "train_labels",
                          "classes", "class_means", "kernel"})
    if (!j.contains(key))
      throw DataError(std::string("gda model: missing field '") + key + "'");
  GdaModel model{matrix_from_json(j["gram"], "gda model gram"),
                 matrix_from_json(j["alpha"], "gda model alpha"),
                 Vector(),
                 j["epsilon"].get<double>(),
                 j["train_labels"].get<std::vector<int>>(),
                 j["classes"].get<std::vector<int>>(),
                 matrix_from_json(j["class_means"], "gda model class_means"),
                 kernel_spec_from_json(j["kernel"])};
  const auto q = j["quotients"].get<std::vector<double>>();
  model.quotients = Eigen::Map<const Vector>(q.data(), static_cast<Index>(q.size()));
  return model;
}

Json grnet_params_to_json(const GrNetParams& params) {
  Json filters = Json::array();
  for (const Matrix& w : params.filters) filters.push_back(matrix_to_json(w));
  return Json{{"n", params.dims.n},
              {"k_in", params.dims.k_in},
              {"m", params.dims.m},
              {"d", params.dims.d},
              {"classes", params.dims.classes},
              {"filters", std::move(filters)},
              {"fc", matrix_to_json(params.fc)},
              {"class_labels", params.class_labels}};
}

GrNetParams grnet_params_from_json(const Json& j) {
  check_fields(j, {"n", "k_in", "m", "d", "classes", "filters", "fc",
                   "class_labels"},
               "grnet params");
  for (const char* key : {"n", "k_in", "m", "d", "classes", "filters", "fc",
                          "class_labels"})
    if (!j.contains(key))
      throw DataError(std::string("grnet params: missing field '") + key + "'");
  GrNetParams params;
  params.dims.n = j["n"].get<Index>();
  params.dims.k_in = j["k_in"].get<Index>();
  params.dims.m = j["m"].get<Index>();
  params.dims.d = j["d"].get<Index>();
  params.dims.classes = j["classes"].get<int>();
  if (!j["filters"].is_array() || j["filters"].empty())
    throw DataError("grnet params: filters must be a non-empty array");
  params.dims.filters = static_cast<int>(j["filters"].size());
  for (const auto& w : j["filters"])
    params.filters.push_back(matrix_from_json(w, "grnet params filter"));
  params.fc = matrix_from_json(j["fc"], "grnet params fc");
  params.class_labels = j["class_labels"].get<std::vector<int>>();
  validate(params.dims);
  for (const Matrix& w : params.filters)
    require_dim(w.rows() == params.dims.m && w.cols() == params.dims.n,
                "grnet params: filter shape mismatch");
  return params;
}

}  // namespace grasslearn
