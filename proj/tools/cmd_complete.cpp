#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/completion.hpp"
#include "grasslearn/numerics.hpp"

namespace fs = std::filesystem;

namespace grasslearn::cli {

namespace {

struct CompleteOpts {
  std::string values_path;
  std::string mask_path;
  std::string truth_path;
  std::string out_dir;
  int rank = 1;
  std::string objective = "frobenius";
  int restarts = 5;
  uint64_t seed = 0;
  OptimFlags optim;
};

Json trace_json(const std::vector<TracePoint>& trace) {
  Json rows = Json::array();
  for (const TracePoint& p : trace)
    rows.push_back(Json{{"value", p.value},
                        {"grad_norm", p.grad_norm},
                        {"step", p.step}});
  return rows;
}

void run_complete(const CompleteOpts& opts) {
  Timer timer;
  fs::create_directories(opts.out_dir);
  const MaskedMatrix masked =
      make_masked(read_matrix_csv(opts.values_path), read_matrix_csv(opts.mask_path));

  CompletionConfig config;
  config.kind = completion_objective_from_string(opts.objective);
  config.restarts = opts.restarts;
  config.optim = opts.optim.resolve();

  // Restarts are independent, so they run in parallel; the seed schedule and
  // the lowest-value tie break (earliest restart) match the sequential path.
  Rng rng(opts.seed);
  std::vector<uint64_t> seeds;
  for (int i = 0; i < config.restarts; ++i) seeds.push_back(rng());
  std::vector<CompletionResult> runs;
  runs.resize(static_cast<size_t>(config.restarts),
              CompletionResult{GrassmannPoint::from_orthonormal(Matrix::Identity(
                                   masked.values.rows(), opts.rank)),
                               {}, {}, std::numeric_limits<double>::infinity(),
                               OptimStatus::IterationCap, {}, {}, -1});
  parallel_for(config.restarts, [&](int i) {
    runs[static_cast<size_t>(i)] =
        complete_one(masked, opts.rank, config, seeds[static_cast<size_t>(i)]);
  });
  int best = 0;
  for (int i = 1; i < config.restarts; ++i)
    if (runs[static_cast<size_t>(i)].residual <
        runs[static_cast<size_t>(best)].residual)
      best = i;
  const CompletionResult& winner = runs[static_cast<size_t>(best)];

  write_matrix_csv((fs::path(opts.out_dir) / "completed.csv").string(),
                   winner.completed);
  write_matrix_csv((fs::path(opts.out_dir) / "subspace.csv").string(),
                   winner.u.basis());
  write_matrix_csv((fs::path(opts.out_dir) / "coefficients.csv").string(),
                   winner.w);

  Json report = make_report(
      opts.seed, Json{{"values", opts.values_path},
                      {"mask", opts.mask_path},
                      {"truth", opts.truth_path},
                      {"out", opts.out_dir},
                      {"rank", opts.rank},
                      {"objective", opts.objective},
                      {"restarts", opts.restarts},
                      {"optim", optim_config_to_json(config.optim)}});
  report["residual"] = winner.residual;
  report["status"] = to_string(winner.status);
  report["best_restart"] = best;
  Json restart_entries = Json::array();
  for (int i = 0; i < config.restarts; ++i)
    restart_entries.push_back(
        Json{{"restart", i},
             {"residual", runs[static_cast<size_t>(i)].residual},
             {"status", to_string(runs[static_cast<size_t>(i)].status)},
             {"trace", trace_json(runs[static_cast<size_t>(i)].trace)}});
  report["restarts"] = std::move(restart_entries);
  if (!opts.truth_path.empty()) {
    const Matrix truth = read_matrix_csv(opts.truth_path);
    require_dim(truth.rows() == winner.completed.rows() &&
                    truth.cols() == winner.completed.cols(),
                "truth matrix shape does not match the completion");
    report["relative_error"] =
        (winner.completed - truth).norm() / std::max(truth.norm(), 1e-300);
  }
  finalize_report(report, timer);
  write_json_file((fs::path(opts.out_dir) / "report.json").string(), report);
  std::cout << report.dump(2) << '\n';
}

}  // namespace

void register_complete(CLI::App& app) {
  auto opts = std::make_shared<CompleteOpts>();
  CLI::App* cmd = app.add_subcommand(
      "complete", "Low-rank completion of a partially observed matrix");
  cmd->add_option("--values", opts->values_path, "observed values CSV")->required();
  cmd->add_option("--mask", opts->mask_path, "0/1 observation mask CSV")->required();
  cmd->add_option("--rank", opts->rank, "target rank")->required();
  cmd->add_option("--objective", opts->objective, "frobenius or projection");
  cmd->add_option("--restarts", opts->restarts, "random restarts");
  cmd->add_option("--truth", opts->truth_path,
                  "ground-truth matrix CSV for the relative error");
  cmd->add_option("--out", opts->out_dir, "output directory")->required();
  cmd->add_option("--seed", opts->seed, "restart seed");
  cmd->add_option("--max-iters", opts->optim.max_iters, "iteration cap");
  cmd->add_option("--grad-tol", opts->optim.grad_tol, "gradient tolerance");
  cmd->callback([opts] { run_complete(*opts); });
}

}  // namespace grasslearn::cli
