#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/manifold.hpp"

namespace grasslearn::cli {

namespace {

struct DistOpts {
  std::string a_path;
  std::string b_path;
  std::string out_path;
  uint64_t seed = 0;
};

void run_dist(const DistOpts& opts) {
  Timer timer;
  const LoadedPoint a = load_grassmann_csv(opts.a_path);
  const LoadedPoint b = load_grassmann_csv(opts.b_path);
  const PrincipalAngles pa = principal_angles(a.point, b.point);

  Json report = make_report(opts.seed, Json{{"a", opts.a_path},
                                            {"b", opts.b_path},
                                            {"out", opts.out_path}});
  report["n"] = a.point.n();
  report["k"] = a.point.k();
  report["was_orthonormal"] =
      Json{{"a", a.was_orthonormal}, {"b", b.was_orthonormal}};
  report["angles"] = std::vector<double>(pa.angles.begin(), pa.angles.end());
  Json distances = Json::object();
  for (DistanceMetric metric : all_distance_metrics())
    distances[to_string(metric)] = distance(metric, pa);
  report["distances"] = std::move(distances);
  finalize_report(report, timer);

  std::cout << report.dump(2) << '\n';
  if (!opts.out_path.empty()) write_json_file(opts.out_path, report);
}

}  // namespace

void register_dist(CLI::App& app) {
  auto opts = std::make_shared<DistOpts>();
  CLI::App* cmd = app.add_subcommand(
      "dist", "Principal angles and all subspace distances between two points");
  cmd->add_option("a", opts->a_path, "first subspace, CSV generator matrix")
      ->required();
  cmd->add_option("b", opts->b_path, "second subspace, CSV generator matrix")
      ->required();
  cmd->add_option("--out", opts->out_path, "also write the JSON report here");
  cmd->add_option("--seed", opts->seed, "recorded in the report");
  cmd->callback([opts] { run_dist(*opts); });
}

}  // namespace grasslearn::cli
