#include <filesystem>
#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/datasets.hpp"
#include "grasslearn/numerics.hpp"

namespace fs = std::filesystem;

namespace grasslearn::cli {

namespace {

struct GenOpts {
  std::string out_dir;
  uint64_t seed = 0;
  // three-rings
  int n_points = 600;
  double noise = 0.1;
  std::vector<double> radii = {1.0, 2.0, 3.0};
  // completion
  int rows = 20;
  int cols = 15;
  int rank = 3;
  double obs_frac = 0.6;
  // subspaces / constellation
  int classes = 3;
  int per_class = 20;
  int ambient = 10;
  int k = 3;
  double within = 0.3;
  int codewords = 8;
  int per_codeword = 5;
  double noise_angle = 0.0;
  // two-domain
  int dim = 20;
  double rotation = 30.0;
};

void emit_meta(const std::string& dir, const std::string& generator,
               uint64_t seed, Json params) {
  fs::create_directories(dir);
  Json meta = make_report(seed, std::move(params));
  meta["generator"] = generator;
  write_json_file((fs::path(dir) / "meta.json").string(), meta);
  std::cout << meta.dump(2) << '\n';
}

void run_three_rings(const GenOpts& opts) {
  if (opts.radii.size() != 3)
    throw DataError("three-rings: --radii needs exactly three values");
  const PointCloud cloud =
      three_rings(opts.n_points, {opts.radii[0], opts.radii[1], opts.radii[2]},
                  opts.noise, opts.seed);
  fs::create_directories(opts.out_dir);
  write_matrix_csv((fs::path(opts.out_dir) / "features.csv").string(),
                   cloud.points);
  write_labels_csv((fs::path(opts.out_dir) / "labels.csv").string(), cloud.labels);
  emit_meta(opts.out_dir, "three-rings", opts.seed,
            Json{{"n", opts.n_points}, {"noise", opts.noise},
                 {"radii", opts.radii}});
}

void run_completion(const GenOpts& opts) {
  const CompletionInstance instance = low_rank_masked(
      opts.rows, opts.cols, opts.rank, opts.obs_frac, opts.seed);
  fs::create_directories(opts.out_dir);
  write_matrix_csv((fs::path(opts.out_dir) / "observed.csv").string(),
                   mask_apply(instance.masked));
  write_matrix_csv((fs::path(opts.out_dir) / "mask.csv").string(),
                   instance.masked.mask);
  write_matrix_csv((fs::path(opts.out_dir) / "truth.csv").string(), instance.truth);
  emit_meta(opts.out_dir, "completion", opts.seed,
            Json{{"rows", opts.rows},
                 {"cols", opts.cols},
                 {"rank", opts.rank},
                 {"obs_frac", opts.obs_frac}});
}

void run_subspaces(const GenOpts& opts) {
  const SubspaceClasses data =
      labeled_subspaces(opts.classes, opts.per_class, opts.ambient, opts.k,
                        opts.within, opts.seed);
  Json meta{{"generator", "subspaces"},
            {"seed", opts.seed},
            {"classes", opts.classes},
            {"per_class", opts.per_class},
            {"within", opts.within}};
  write_grassmann_set(opts.out_dir, data.set.points, &data.set.labels, meta);
  write_grassmann_set((fs::path(opts.out_dir) / "prototypes").string(),
                      data.prototypes, nullptr,
                      Json{{"generator", "subspaces/prototypes"}, {"seed", opts.seed}});
  std::cout << meta.dump(2) << '\n';
}

void run_two_domain(const GenOpts& opts) {
  const DomainPair pair = two_domain_shift(opts.per_class, opts.classes, opts.dim,
                                           opts.rotation, opts.seed);
  fs::create_directories(opts.out_dir);
  write_matrix_csv((fs::path(opts.out_dir) / "source_features.csv").string(),
                   pair.source_features);
  write_labels_csv((fs::path(opts.out_dir) / "source_labels.csv").string(),
                   pair.source_labels);
  write_matrix_csv((fs::path(opts.out_dir) / "target_features.csv").string(),
                   pair.target_features);
  write_labels_csv((fs::path(opts.out_dir) / "target_labels.csv").string(),
                   pair.target_labels);
  emit_meta(opts.out_dir, "two-domain", opts.seed,
            Json{{"classes", opts.classes},
                 {"per_class", opts.per_class},
                 {"dim", opts.dim},
                 {"rotation_deg", opts.rotation}});
}

void run_constellation(const GenOpts& opts) {
  const ConstellationData data =
      constellation(opts.ambient, opts.k, opts.codewords, opts.per_codeword,
                    opts.noise_angle, opts.seed);
  Json meta{{"generator", "constellation"},
            {"seed", opts.seed},
            {"codewords", opts.codewords},
            {"per_codeword", opts.per_codeword},
            {"noise_angle", opts.noise_angle}};
  write_grassmann_set(opts.out_dir, data.set.points, &data.set.labels, meta);
  std::vector<GrassmannPoint> codebook = data.codewords;
  write_grassmann_set((fs::path(opts.out_dir) / "codebook").string(), codebook,
                      nullptr,
                      Json{{"generator", "constellation/codebook"}, {"seed", opts.seed}});
  std::cout << meta.dump(2) << '\n';
}

}  // namespace

void register_gen(CLI::App& app) {
  CLI::App* cmd =
      app.add_subcommand("gen", "Seeded synthetic benchmark generators");
  cmd->require_subcommand(1);
  auto opts = std::make_shared<GenOpts>();

  CLI::App* rings = cmd->add_subcommand("three-rings",
                                        "concentric noisy rings in the plane");
  rings->add_option("--n", opts->n_points, "total point count");
  rings->add_option("--noise", opts->noise, "radial noise standard deviation");
  rings->add_option("--radii", opts->radii, "the three ring radii")
      ->expected(3);
  rings->add_option("--out", opts->out_dir, "output directory")->required();
  rings->add_option("--seed", opts->seed, "generator seed");
  rings->callback([opts] { run_three_rings(*opts); });

  CLI::App* comp = cmd->add_subcommand("completion",
                                       "low-rank matrix with an observation mask");
  comp->add_option("--rows", opts->rows, "matrix rows");
  comp->add_option("--cols", opts->cols, "matrix columns");
  comp->add_option("--rank", opts->rank, "true rank");
  comp->add_option("--obs-frac", opts->obs_frac, "observation probability");
  comp->add_option("--out", opts->out_dir, "output directory")->required();
  comp->add_option("--seed", opts->seed, "generator seed");
  comp->callback([opts] { run_completion(*opts); });

  CLI::App* subs = cmd->add_subcommand("subspaces",
                                       "labeled subspace classes around prototypes");
  subs->add_option("--classes", opts->classes, "class count");
  subs->add_option("--per-class", opts->per_class, "samples per class");
  subs->add_option("--n", opts->ambient, "ambient dimension");
  subs->add_option("--k", opts->k, "subspace dimension");
  subs->add_option("--within", opts->within, "within-class tangent radius");
  subs->add_option("--out", opts->out_dir, "output directory")->required();
  subs->add_option("--seed", opts->seed, "generator seed");
  subs->callback([opts] { run_subspaces(*opts); });

  CLI::App* domains = cmd->add_subcommand(
      "two-domain", "class blobs seen from a rotated second domain");
  domains->add_option("--classes", opts->classes, "class count");
  domains->add_option("--per-class", opts->per_class, "samples per class and domain");
  domains->add_option("--dim", opts->dim, "feature dimension");
  domains->add_option("--rotation", opts->rotation, "domain rotation in degrees");
  domains->add_option("--out", opts->out_dir, "output directory")->required();
  domains->add_option("--seed", opts->seed, "generator seed");
  domains->callback([opts] { run_two_domain(*opts); });

  CLI::App* cons = cmd->add_subcommand(
      "constellation", "well separated subspace codebook with noisy copies");
  cons->add_option("--n", opts->ambient, "ambient dimension");
  cons->add_option("--k", opts->k, "subspace dimension");
  cons->add_option("--codewords", opts->codewords, "codebook size");
  cons->add_option("--per-codeword", opts->per_codeword, "copies per codeword");
  cons->add_option("--noise", opts->noise_angle, "perturbation tangent radius");
  cons->add_option("--out", opts->out_dir, "output directory")->required();
  cons->add_option("--seed", opts->seed, "generator seed");
  cons->callback([opts] { run_constellation(*opts); });
}

}  // namespace grasslearn::cli
