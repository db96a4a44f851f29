#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/grnet.hpp"

namespace grasslearn::cli {

namespace {

struct GrnetTrainOpts {
  std::string data_dir;
  std::string model_path;
  std::string out_path;
  Index m = 0;
  Index d = 0;
  int filters = 1;
  int epochs = 30;
  double step = 0.5;
  double fd_step = 1e-5;
  uint64_t seed = 0;
};

struct GrnetEvalOpts {
  std::string model_path;
  std::string data_dir;
  std::string out_path;
  std::string predictions_path;
  uint64_t seed = 0;
};

void run_train(const GrnetTrainOpts& opts) {
  Timer timer;
  const LabeledGrassmannSet data = as_labeled(read_grassmann_set(opts.data_dir));

  GrNetDims dims;
  dims.n = data.points.front().n();
  dims.k_in = data.points.front().k();
  dims.m = opts.m;
  dims.d = opts.d;
  dims.classes = static_cast<int>(class_values(data.labels).size());
  dims.filters = opts.filters;
  validate(dims);

  Rng rng(opts.seed);
  GrNetParams initial = grnet_init(dims, rng);
  // Logit columns follow the sorted distinct label values of the data.
  initial.class_labels = class_values(data.labels);
  GrNetTrainConfig config;
  config.epochs = opts.epochs;
  config.step = opts.step;
  config.fd_step = opts.fd_step;
  const GrNetTrainResult result = grnet_train(initial, data, config);
  write_json_file(opts.model_path, grnet_params_to_json(result.params));

  Json report = make_report(opts.seed, Json{{"data", opts.data_dir},
                                            {"model", opts.model_path},
                                            {"m", dims.m},
                                            {"d", dims.d},
                                            {"filters", dims.filters},
                                            {"epochs", opts.epochs},
                                            {"step", opts.step},
                                            {"fd_step", opts.fd_step}});
  report["classes"] = dims.classes;
  report["loss_trace"] = result.loss_trace;
  report["best_loss"] = result.best_loss;
  report["train_accuracy"] = grnet_accuracy(result.params, data);
  finalize_report(report, timer);
  std::cout << report.dump(2) << '\n';
  if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
}

void run_eval(const GrnetEvalOpts& opts) {
  Timer timer;
  const GrNetParams params = grnet_params_from_json(read_json_file(opts.model_path));
  const StoredSet stored = read_grassmann_set(opts.data_dir);

  const std::vector<int> predicted = grnet_predict(params, stored.points);
  Json report = make_report(opts.seed, Json{{"model", opts.model_path},
                                            {"data", opts.data_dir}});
  report["predicted"] = predicted;
  if (!stored.labels.empty()) {
    int correct = 0;
    for (size_t i = 0; i < predicted.size(); ++i)
      if (predicted[i] == stored.labels[i]) ++correct;
    report["accuracy"] =
        static_cast<double>(correct) / static_cast<double>(predicted.size());
  }
  if (!opts.predictions_path.empty())
    write_labels_csv(opts.predictions_path, predicted);
  finalize_report(report, timer);
  std::cout << report.dump(2) << '\n';
  if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
}

}  // namespace

void register_grnet(CLI::App& app) {
  CLI::App* cmd = app.add_subcommand(
      "grnet", "Orthogonality-preserving network on subspace inputs");
  cmd->require_subcommand(1);

  auto train = std::make_shared<GrnetTrainOpts>();
  CLI::App* train_cmd = cmd->add_subcommand("train", "train and save a model");
  train_cmd->add_option("--data", train->data_dir, "labeled subspace set directory")
      ->required();
  train_cmd->add_option("--model", train->model_path, "output model JSON")
      ->required();
  train_cmd->add_option("--m", train->m, "filter output rows")->required();
  train_cmd->add_option("--d", train->d, "dominant subspace dimension")->required();
  train_cmd->add_option("--filters", train->filters, "filter count");
  train_cmd->add_option("--epochs", train->epochs, "training epochs");
  train_cmd->add_option("--step", train->step, "initial gradient step");
  train_cmd->add_option("--fd-step", train->fd_step, "finite difference step");
  train_cmd->add_option("--out", train->out_path, "also write the report here");
  train_cmd->add_option("--seed", train->seed, "parameter initialization seed");
  train_cmd->callback([train] { run_train(*train); });

  auto eval = std::make_shared<GrnetEvalOpts>();
  CLI::App* eval_cmd = cmd->add_subcommand("eval", "classify with a saved model");
  eval_cmd->add_option("--model", eval->model_path, "model JSON from grnet train")
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
