#include <charconv>
#include <filesystem>
#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/clustering.hpp"
#include "grasslearn/numerics.hpp"

namespace fs = std::filesystem;

namespace grasslearn::cli {

namespace {

struct ClusterOpts {
  std::string method;
  std::string data_path;
  std::string truth_path;
  std::string out_dir;
  int k = 2;
  double sigma = 1.6;
  bool sweep = false;
  double beta = 0.01;
  double mu = 1e-3;
  std::string laplacian_kind = "normalized";
  bool no_normalize_rows = false;
  uint64_t seed = 0;
  OptimFlags optim;
};

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// One spectral or sparse-spectral run at a fixed bandwidth.
struct SigmaRun {
  double sigma;
  std::vector<int> labels;
  Matrix embedding;
  Json optim_info;  // null for the plain spectral method
};

SigmaRun run_sigma(const ClusterOpts& opts, const Matrix& rows, double sigma,
                   uint64_t seed) {
  const Matrix lap =
      laplacian(affinity(rows, sigma), laplacian_kind_from_string(opts.laplacian_kind));
  SigmaRun run;
  run.sigma = sigma;
  if (opts.method == "ssc") {
    SparseSpectralConfig config;
    config.k = opts.k;
    config.beta = opts.beta;
    config.mu = opts.mu;
    config.optim = opts.optim.resolve();
    const SparseSpectralResult result = sparse_spectral(lap, config);
    run.embedding = result.u.basis();
    run.optim_info = Json{{"status", to_string(result.opt.status)},
                          {"iterations", result.opt.iterations},
                          {"value", result.opt.value}};
  } else {
    run.embedding = spectral_embed(lap, opts.k);
  }
  Rng rng(seed);
  run.labels = cluster_rows(run.embedding, opts.k, !opts.no_normalize_rows, rng);
  return run;
}

void run_cluster(const ClusterOpts& opts) {
  Timer timer;
  fs::create_directories(opts.out_dir);
  Json report = make_report(
      opts.seed,
      Json{{"method", opts.method},          {"data", opts.data_path},
           {"truth", opts.truth_path},       {"out", opts.out_dir},
           {"k", opts.k},                    {"sigma", opts.sigma},
           {"sweep", opts.sweep},            {"beta", opts.beta},
           {"mu", opts.mu},                  {"laplacian", opts.laplacian_kind},
           {"normalize_rows", !opts.no_normalize_rows}});

  std::vector<int> truth;
  if (!opts.truth_path.empty()) truth = read_labels_csv(opts.truth_path);

  auto score = [&truth](Json& entry, const std::vector<int>& labels) {
    if (truth.empty()) return;
    entry["accuracy"] = best_match_accuracy(labels, truth);
    entry["ari"] = adjusted_rand_index(labels, truth);
  };

  if (opts.method == "grkmeans") {
    StoredSet stored = read_grassmann_set(opts.data_path);
    if (truth.empty()) truth = stored.labels;
    Rng rng(opts.seed);
    const GrassmannKmeansResult result =
        grassmann_kmeans(stored.points, opts.k, 100, rng);
    write_labels_csv((fs::path(opts.out_dir) / "labels.csv").string(),
                     result.labels);
    for (size_t c = 0; c < result.centers.size(); ++c)
      write_matrix_csv(
          (fs::path(opts.out_dir) / ("center_" + std::to_string(c) + ".csv"))
              .string(),
          result.centers[c].basis());
    report["iterations"] = result.iterations;
    report["objective_trace"] = result.objective_trace;
    score(report, result.labels);
  } else if (opts.method == "spectral" || opts.method == "ssc") {
    const Matrix rows = read_matrix_csv(opts.data_path);
    std::vector<double> sigmas =
        opts.sweep ? std::vector<double>{0.1, 1.0, 1.6, 3.0, 5.0}
                   : std::vector<double>{opts.sigma};
    std::vector<SigmaRun> runs(sigmas.size());
    parallel_for(static_cast<int>(sigmas.size()), [&](int i) {
      runs[static_cast<size_t>(i)] =
          run_sigma(opts, rows, sigmas[static_cast<size_t>(i)],
                    opts.seed + static_cast<uint64_t>(i));
    });

    Json sweep_entries = Json::array();
    for (const SigmaRun& run : runs) {
      const std::string tag =
          opts.sweep ? "_sigma_" + fmt_double(run.sigma) : std::string();
      const std::string labels_file = "labels" + tag + ".csv";
      const std::string embedding_file = "embedding" + tag + ".csv";
      const std::string projector_file = "projector" + tag + ".csv";
      write_labels_csv((fs::path(opts.out_dir) / labels_file).string(), run.labels);
      write_matrix_csv((fs::path(opts.out_dir) / embedding_file).string(),
                       run.embedding);
      write_matrix_csv((fs::path(opts.out_dir) / projector_file).string(),
                       Matrix(run.embedding * run.embedding.transpose()));
      Json entry{{"sigma", run.sigma},
                 {"labels_file", labels_file},
                 {"embedding_file", embedding_file},
                 {"projector_file", projector_file}};
      if (!run.optim_info.is_null()) entry["optim"] = run.optim_info;
      score(entry, run.labels);
      sweep_entries.push_back(std::move(entry));
    }
    if (opts.sweep)
      report["sweep"] = std::move(sweep_entries);
    else
      report.update(sweep_entries[0]);
  } else {
    throw DataError("unknown clustering method '" + opts.method +
                    "', expected spectral, ssc or grkmeans");
  }

  finalize_report(report, timer);
  write_json_file((fs::path(opts.out_dir) / "report.json").string(), report);
  std::cout << report.dump(2) << '\n';
}

}  // namespace

void register_cluster(CLI::App& app) {
  auto opts = std::make_shared<ClusterOpts>();
  CLI::App* cmd = app.add_subcommand(
      "cluster", "Spectral, sparse spectral, or subspace k-means clustering");
  cmd->add_option("--method", opts->method, "spectral, ssc or grkmeans")
      ->required();
  cmd->add_option("--data", opts->data_path,
                  "row-vector CSV (spectral, ssc) or subspace set directory "
                  "(grkmeans)")
      ->required();
  cmd->add_option("--truth", opts->truth_path,
                  "ground-truth labels CSV for accuracy and the Rand index");
  cmd->add_option("--out", opts->out_dir, "output directory")->required();
  cmd->add_option("--k", opts->k, "number of clusters")->required();
  cmd->add_option("--sigma", opts->sigma, "Gaussian affinity bandwidth");
  cmd->add_flag("--sweep", opts->sweep,
                "run the bandwidth sweep {0.1, 1, 1.6, 3, 5}");
  cmd->add_option("--beta", opts->beta, "ssc sparsity weight");
  cmd->add_option("--mu", opts->mu, "ssc sparsity smoothing");
  cmd->add_option("--laplacian", opts->laplacian_kind,
                  "normalized or unnormalized");
  cmd->add_flag("--no-normalize-rows", opts->no_normalize_rows,
                "skip unit normalization of embedding rows");
  cmd->add_option("--seed", opts->seed, "k-means restart seed");
  cmd->add_option("--max-iters", opts->optim.max_iters, "ssc iteration cap");
  cmd->add_option("--grad-tol", opts->optim.grad_tol, "ssc gradient tolerance");
  cmd->callback([opts] { run_cluster(*opts); });
}

}  // namespace grasslearn::cli
