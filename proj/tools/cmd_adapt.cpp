#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/adapt.hpp"
#include "grasslearn/numerics.hpp"

namespace grasslearn::cli {

namespace {

struct AdaptOpts {
  std::string source_features;
  std::string source_labels;
  std::string target_features;
  std::string target_labels;
  std::string out_path;
  std::string predictions_path;
  std::string method = "gfk";
  int dim = 0;
  double t = -1.0;  // negative means "pick by cross-validation"
  int nodes = 20;
  uint64_t seed = 0;
};

Matrix take_rows(const Matrix& m, const std::vector<int>& idx) {
  Matrix out(static_cast<Index>(idx.size()), m.cols());
  for (size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Index>(i)) = m.row(idx[i]);
  return out;
}

std::vector<int> take_labels(const std::vector<int>& labels,
                             const std::vector<int>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(labels[static_cast<size_t>(i)]);
  return out;
}

// Source-only two-fold cross-validation of the geodesic parameter: the flow
// is still the real source-to-target geodesic, but train and test are the
// two source folds, so target labels never enter.
double cv_accuracy(const DomainPair& pair, double t, uint64_t seed) {
  const int n = static_cast<int>(pair.source_features.rows());
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::vector<int> fold_a(order.begin(), order.begin() + n / 2);
  const std::vector<int> fold_b(order.begin() + n / 2, order.end());

  double total = 0.0;
  for (const auto& [train, test] :
       {std::pair{fold_a, fold_b}, std::pair{fold_b, fold_a}}) {
    DomainPair fold{pair.source,
                    pair.target,
                    take_rows(pair.source_features, train),
                    take_labels(pair.source_labels, train),
                    take_rows(pair.source_features, test),
                    take_labels(pair.source_labels, test)};
    total += adapt_classify(fold, AdaptMethod::sgf(t)).accuracy;
  }
  return total / 2.0;
}

void run_adapt(const AdaptOpts& opts) {
  Timer timer;
  DomainPair pair{GrassmannPoint::from_orthonormal(Matrix::Identity(1, 1)),
                  GrassmannPoint::from_orthonormal(Matrix::Identity(1, 1)),
                  read_matrix_csv(opts.source_features),
                  read_labels_csv(opts.source_labels),
                  read_matrix_csv(opts.target_features),
                  read_labels_csv(opts.target_labels)};
  require_dim(opts.dim >= 1, "adapt: --dim must be at least 1");
  pair.source = pca_subspace(pair.source_features, opts.dim);
  pair.target = pca_subspace(pair.target_features, opts.dim);

  Json report = make_report(
      opts.seed, Json{{"source_features", opts.source_features},
                      {"source_labels", opts.source_labels},
                      {"target_features", opts.target_features},
                      {"target_labels", opts.target_labels},
                      {"method", opts.method},
                      {"dim", opts.dim},
                      {"t", opts.t},
                      {"nodes", opts.nodes}});

  AdaptMethod method = AdaptMethod::none();
  if (opts.method == "none") {
    method = AdaptMethod::none();
  } else if (opts.method == "gfk") {
    method = AdaptMethod::gfk(opts.nodes);
  } else if (opts.method == "sgf") {
    double t = opts.t;
    if (t < 0.0) {
      const std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                        0.6, 0.7, 0.8, 0.9};
      std::vector<double> scores(grid.size());
      parallel_for(static_cast<int>(grid.size()), [&](int i) {
        scores[static_cast<size_t>(i)] =
            cv_accuracy(pair, grid[static_cast<size_t>(i)], opts.seed);
      });
      size_t best = 0;
      for (size_t i = 1; i < grid.size(); ++i)
        if (scores[i] > scores[best]) best = i;
      t = grid[best];
      Json cv = Json::array();
      for (size_t i = 0; i < grid.size(); ++i)
        cv.push_back(Json{{"t", grid[i]}, {"cv_accuracy", scores[i]}});
      report["cross_validation"] = std::move(cv);
    }
    report["chosen_t"] = t;
    method = AdaptMethod::sgf(t);
  } else {
    throw DataError("unknown adaptation method '" + opts.method +
                    "', expected gfk, sgf or none");
  }

  const AdaptResult result = adapt_classify(pair, method);
  report["method"] = opts.method;
  report["accuracy"] = result.accuracy;

  std::map<int, std::pair<int, int>> per_class;  // label -> (correct, total)
  for (size_t i = 0; i < result.predicted.size(); ++i) {
    auto& [correct, total] = per_class[pair.target_labels[i]];
    ++total;
    if (result.predicted[i] == pair.target_labels[i]) ++correct;
  }
  Json per_class_json = Json::object();
  for (const auto& [label, counts] : per_class)
    per_class_json[std::to_string(label)] =
        static_cast<double>(counts.first) / counts.second;
  report["per_class_accuracy"] = std::move(per_class_json);

  if (!opts.predictions_path.empty())
    write_labels_csv(opts.predictions_path, result.predicted);
  finalize_report(report, timer);
  std::cout << report.dump(2) << '\n';
  if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
}

}  // namespace

void register_adapt(CLI::App& app) {
  auto opts = std::make_shared<AdaptOpts>();
  CLI::App* cmd = app.add_subcommand(
      "adapt", "Domain adaptation by geodesic flow between PCA subspaces");
  cmd->add_option("--source-features", opts->source_features, "CSV, rows = samples")
      ->required();
  cmd->add_option("--source-labels", opts->source_labels, "labels CSV")->required();
  cmd->add_option("--target-features", opts->target_features, "CSV, rows = samples")
      ->required();
  cmd->add_option("--target-labels", opts->target_labels,
                  "labels CSV, used for evaluation only")
      ->required();
  cmd->add_option("--dim", opts->dim, "PCA subspace dimension")->required();
  cmd->add_option("--method", opts->method, "gfk, sgf or none");
  cmd->add_option("--t", opts->t,
                  "sgf geodesic parameter; omit to pick by source-domain "
                  "cross-validation");
  cmd->add_option("--nodes", opts->nodes, "gfk quadrature nodes");
  cmd->add_option("--out", opts->out_path, "also write the JSON report here");
  cmd->add_option("--predictions", opts->predictions_path,
                  "write predicted target labels CSV");
  cmd->add_option("--seed", opts->seed, "cross-validation fold seed");
  cmd->callback([opts] { run_adapt(*opts); });
}

}  // namespace grasslearn::cli
