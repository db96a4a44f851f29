#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/numerics.hpp"

namespace grasslearn::cli {

namespace {

struct GdaTrainOpts {
  std::string data_dir;
  std::string model_path;
  std::string out_path;
  std::string kernel = "projection";
  double sigma = 1.0;
  std::string base = "projection";
  int dim = 0;        // 0 means "one less than the class count"
  double epsilon = -1.0;  // negative means "trace-scaled default"
  uint64_t seed = 0;
};

struct GdaEvalOpts {
  std::string model_path;
  std::string train_dir;
  std::string data_dir;
  std::string out_path;
  std::string predictions_path;
  uint64_t seed = 0;
};

KernelSpec make_spec(const std::string& kind, double sigma, const std::string& base) {
  const KernelKind k = kernel_kind_from_string(kind);
  switch (k) {
    case KernelKind::Projection: return KernelSpec::projection();
    case KernelKind::BinetCauchy: return KernelSpec::binet_cauchy();
    case KernelKind::GaussianOnDistance:
      return KernelSpec::gaussian(sigma, distance_metric_from_string(base));
  }
  throw DataError("unknown kernel kind '" + kind + "'");
}

double labeled_accuracy(const std::vector<int>& predicted,
                        const std::vector<int>& truth) {
  int correct = 0;
  for (size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] == truth[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

void run_train(const GdaTrainOpts& opts) {
  Timer timer;
  const LabeledGrassmannSet data = as_labeled(read_grassmann_set(opts.data_dir));
  const KernelSpec spec = make_spec(opts.kernel, opts.sigma, opts.base);

  const int classes = static_cast<int>(class_values(data.labels).size());
  const int m = opts.dim > 0 ? opts.dim : classes - 1;
  double epsilon = opts.epsilon;
  if (epsilon <= 0.0) epsilon = gda_default_epsilon(gram(spec, data.points).entries);

  const GdaModel model = gda_fit(data, spec, epsilon, m);
  write_json_file(opts.model_path, gda_model_to_json(model));

  Json report = make_report(
      opts.seed, Json{{"data", opts.data_dir},
                      {"model", opts.model_path},
                      {"kernel", kernel_spec_to_json(spec)},
                      {"dim", m},
                      {"epsilon", epsilon}});
  report["classes"] = model.classes;
  report["quotients"] =
      std::vector<double>(model.quotients.begin(), model.quotients.end());
  const std::vector<int> train_predicted =
      gda_classify(model, gda_kernel_rows(model, data.points, data.points));
  report["train_accuracy"] = labeled_accuracy(train_predicted, data.labels);
  finalize_report(report, timer);
  std::cout << report.dump(2) << '\n';
  if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
}

void run_eval(const GdaEvalOpts& opts) {
  Timer timer;
  const GdaModel model = gda_model_from_json(read_json_file(opts.model_path));
  const StoredSet train = read_grassmann_set(opts.train_dir);
  if (static_cast<Index>(train.points.size()) != model.gram.rows())
    throw DataError("training directory does not match the model: " +
                    std::to_string(train.points.size()) + " points vs Gram size " +
                    std::to_string(model.gram.rows()));
  const StoredSet queries = read_grassmann_set(opts.data_dir);

  const std::vector<int> predicted =
      gda_classify(model, gda_kernel_rows(model, train.points, queries.points));
  Json report = make_report(opts.seed, Json{{"model", opts.model_path},
                                            {"train_data", opts.train_dir},
                                            {"data", opts.data_dir}});
  report["predicted"] = predicted;
  if (!queries.labels.empty())
    report["accuracy"] = labeled_accuracy(predicted, queries.labels);
  if (!opts.predictions_path.empty())
    write_labels_csv(opts.predictions_path, predicted);
  finalize_report(report, timer);
  std::cout << report.dump(2) << '\n';
  if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
}

}  // namespace

void register_gda(CLI::App& app) {
  CLI::App* cmd = app.add_subcommand(
      "gda", "Kernel discriminant analysis on labeled subspace sets");
  cmd->require_subcommand(1);

  auto train = std::make_shared<GdaTrainOpts>();
  CLI::App* train_cmd = cmd->add_subcommand("train", "fit and save a model");
  train_cmd->add_option("--data", train->data_dir, "labeled subspace set directory")
      ->required();
  train_cmd->add_option("--model", train->model_path, "output model JSON")
      ->required();
  train_cmd->add_option("--kernel", train->kernel,
                        "projection, binet-cauchy or gaussian");
  train_cmd->add_option("--sigma", train->sigma, "gaussian kernel bandwidth");
  train_cmd->add_option("--base", train->base,
                        "gaussian base metric: projection or chordal");
  train_cmd->add_option("--dim", train->dim,
                        "discriminant directions (default: classes - 1)");
  train_cmd->add_option("--epsilon", train->epsilon,
                        "within-scatter ridge (default: trace scaled)");
  train_cmd->add_option("--out", train->out_path, "also write the report here");
  train_cmd->add_option("--seed", train->seed, "recorded in the report");
  train_cmd->callback([train] { run_train(*train); });

  auto eval = std::make_shared<GdaEvalOpts>();
  CLI::App* eval_cmd = cmd->add_subcommand("eval", "classify with a saved model");
  eval_cmd->add_option("--model", eval->model_path, "model JSON from gda train")
      ->required();
  eval_cmd->add_option("--train-data", eval->train_dir,
                       "the directory the model was trained on")
      ->required();
  eval_cmd->add_option("--data", eval->data_dir, "subspace set to classify")
      ->required();
  eval_cmd->add_option("--predictions", eval->predictions_path,
                       "write predicted labels CSV");
  eval_cmd->add_option("--out", eval->out_path, "also write the report here");
  eval_cmd->add_option("--seed", eval->seed, "recorded in the report");
  eval_cmd->callback([eval] { run_eval(*eval); });
}

}  // namespace grasslearn::cli
