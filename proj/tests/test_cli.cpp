#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "util.hpp"

using grasslearn::testing::TempDir;
using grasslearn::testing::write_text;
using Json = nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string output;  // stdout and stderr merged
};

CliRun run_cli(const std::string& args, const TempDir& dir) {
  const std::string capture = dir.file("cli_capture.txt");
  const std::string cmd =
      std::string(GRASSLEARN_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  std::ifstream in(capture);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WEXITSTATUS(status), buf.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage problems exit with code 1") {
  TempDir dir;
  CHECK(run_cli("", dir).code == 1);
  CHECK(run_cli("frobnicate", dir).code == 1);
  CHECK(run_cli("cluster", dir).code == 1);  // missing required flags
  const CliRun help = run_cli("--help", dir);
  CHECK(help.code == 0);
  CHECK(help.output.find("dist") != std::string::npos);
  CHECK(run_cli("--version", dir).output.find("0.1.0") != std::string::npos);
}

TEST_CASE("data problems exit with code 2") {
  TempDir dir;
  const CliRun missing = run_cli("dist /nonexistent/a.csv /nonexistent/b.csv", dir);
  CHECK(missing.code == 2);
  CHECK(missing.output.find("/nonexistent/a.csv") != std::string::npos);

  write_text(dir.file("a.csv"), "1\n0\n");
  write_text(dir.file("tall.csv"), "1\n0\n0\n");
  const CliRun shape =
      run_cli("dist " + dir.file("a.csv") + " " + dir.file("tall.csv"), dir);
  CHECK(shape.code == 2);

  const CliRun method = run_cli(
      "adapt --source-features x --source-labels x --target-features x "
      "--target-labels x --dim 2 --method warp",
      dir);
  CHECK(method.code == 2);
}

TEST_CASE("numerical failures exit with code 3") {
  TempDir dir;
  // Two dependent columns cannot generate a 2-dimensional subspace.
  write_text(dir.file("flat.csv"), "1,2\n2,4\n3,6\n");
  write_text(dir.file("b.csv"), "1,0\n0,1\n0,0\n");
  const CliRun r = run_cli("dist " + dir.file("flat.csv") + " " + dir.file("b.csv"), dir);
  CHECK(r.code == 3);
}

TEST_CASE("dist reports the worked line example as json") {
  TempDir dir;
  write_text(dir.file("x.csv"), "1\n0\n");
  write_text(dir.file("y.csv"), "0.5\n0.8660254037844386\n");
  const CliRun r = run_cli("dist " + dir.file("x.csv") + " " + dir.file("y.csv"), dir);
  REQUIRE(r.code == 0);
  const Json report = Json::parse(r.output);
  CHECK(report["n"] == 2);
  CHECK(report["k"] == 1);
  CHECK(report["was_orthonormal"]["a"] == true);
  CHECK(std::abs(report["angles"][0].get<double>() - M_PI / 3) < 1e-12);
  CHECK(std::abs(report["distances"]["chordal"].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(report["distances"]["arc-length"].get<double>() - M_PI / 3) < 1e-12);
  CHECK(report["versions"].contains("grasslearn"));
  CHECK(report.contains("wall_time_ms"));
  CHECK(report["seed"].is_number());
}

TEST_CASE("verify passes its built-in checks") {
  TempDir dir;
  const CliRun r = run_cli("verify", dir);
  CHECK(r.code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("generators are byte-identical across reruns of one seed") {
  TempDir dir;
  REQUIRE(run_cli("gen three-rings --n 60 --noise 0.2 --seed 4 --out " +
                      dir.file("a"),
                  dir)
              .code == 0);
  REQUIRE(run_cli("gen three-rings --n 60 --noise 0.2 --seed 4 --out " +
                      dir.file("b"),
                  dir)
              .code == 0);
  CHECK(read_file(dir.file("a") + "/features.csv") ==
        read_file(dir.file("b") + "/features.csv"));
  CHECK(read_file(dir.file("a") + "/labels.csv") ==
        read_file(dir.file("b") + "/labels.csv"));
  const CliRun other = run_cli(
      "gen three-rings --n 60 --noise 0.2 --seed 5 --out " + dir.file("c"), dir);
  REQUIRE(other.code == 0);
  CHECK(read_file(dir.file("a") + "/features.csv") !=
        read_file(dir.file("c") + "/features.csv"));
}

TEST_CASE("a generated completion instance is recovered end to end") {
  TempDir dir;
  REQUIRE(run_cli("gen completion --rows 10 --cols 8 --rank 2 --obs-frac 0.8 "
                  "--seed 3 --out " +
                      dir.file("inst"),
                  dir)
              .code == 0);
  const CliRun r = run_cli("complete --values " + dir.file("inst/observed.csv") +
                               " --mask " + dir.file("inst/mask.csv") +
                               " --rank 2 --restarts 2 --truth " +
                               dir.file("inst/truth.csv") + " --seed 5 --out " +
                               dir.file("rep"),
                           dir);
  REQUIRE(r.code == 0);
  const Json report = Json::parse(read_file(dir.file("rep/report.json")));
  CHECK(read_file(dir.file("rep/completed.csv")).size() > 0);
  CHECK(report["relative_error"].get<double>() <= 1e-3);
  CHECK(report["restarts"].size() == 2);
  CHECK(report["config"]["rank"] == 2);
}

TEST_CASE("clustering subcommands report accuracy and the rand index") {
  TempDir dir;
  REQUIRE(run_cli("gen three-rings --n 600 --noise 0.5 --radii 8 16 24 "
                  "--seed 11 --out " +
                      dir.file("rings"),
                  dir)
              .code == 0);
  REQUIRE(run_cli("cluster --method ssc --data " + dir.file("rings/features.csv") +
                      " --truth " + dir.file("rings/labels.csv") +
                      " --k 3 --sigma 1.6 --out " + dir.file("clus"),
                  dir)
              .code == 0);
  const Json report = Json::parse(read_file(dir.file("clus/report.json")));
  CHECK(report["accuracy"].get<double>() >= 0.9);

  REQUIRE(run_cli("cluster --method ssc --data " + dir.file("rings/features.csv") +
                      " --truth " + dir.file("rings/labels.csv") +
                      " --k 3 --sweep --out " + dir.file("sweep"),
                  dir)
              .code == 0);
  const Json sweep = Json::parse(read_file(dir.file("sweep/report.json")));
  CHECK(sweep["sweep"].size() == 5);

  REQUIRE(run_cli("gen constellation --n 8 --k 2 --codewords 4 --per-codeword 5 "
                  "--noise 0 --seed 3 --out " +
                      dir.file("cons"),
                  dir)
              .code == 0);
  REQUIRE(run_cli("cluster --method grkmeans --data " + dir.file("cons") +
                      " --k 4 --truth " + dir.file("cons/labels.csv") + " --out " +
                      dir.file("ck"),
                  dir)
              .code == 0);
  const Json grk = Json::parse(read_file(dir.file("ck/report.json")));
  CHECK(grk["ari"].get<double>() == 1.0);
}

TEST_CASE("gda train and eval round-trip through the model file") {
  TempDir dir;
  REQUIRE(run_cli("gen subspaces --classes 2 --per-class 6 --n 6 --k 2 "
                  "--within 0.2 --seed 9 --out " +
                      dir.file("set"),
                  dir)
              .code == 0);
  const CliRun train =
      run_cli("gda train --data " + dir.file("set") + " --model " +
                  dir.file("model.json") + " --dim 1",
              dir);
  REQUIRE(train.code == 0);
  const Json trained = Json::parse(train.output);
  CHECK(trained["train_accuracy"].get<double>() >= 0.9);
  const CliRun eval = run_cli("gda eval --model " + dir.file("model.json") +
                                  " --train-data " + dir.file("set") + " --data " +
                                  dir.file("set"),
                              dir);
  REQUIRE(eval.code == 0);
  const Json evaled = Json::parse(eval.output);
  CHECK(evaled["accuracy"].get<double>() ==
        doctest::Approx(trained["train_accuracy"].get<double>()));
}

TEST_CASE("grnet train and eval round-trip through the model file") {
  TempDir dir;
  REQUIRE(run_cli("gen constellation --n 8 --k 2 --codewords 2 "
                  "--per-codeword 10 --noise 0.05 --seed 29 --out " +
                      dir.file("set"),
                  dir)
              .code == 0);
  const CliRun train =
      run_cli("grnet train --data " + dir.file("set") + " --model " +
                  dir.file("model.json") + " --m 6 --d 2 --epochs 20 --seed 29",
              dir);
  REQUIRE(train.code == 0);
  const Json trained = Json::parse(train.output);
  CHECK(trained["train_accuracy"].get<double>() >= 0.8);
  CHECK(trained["loss_trace"].size() == 21);
  const CliRun eval = run_cli(
      "grnet eval --model " + dir.file("model.json") + " --data " + dir.file("set"),
      dir);
  REQUIRE(eval.code == 0);
  const Json evaled = Json::parse(eval.output);
  CHECK(evaled["accuracy"].get<double>() >= 0.8);
  CHECK(evaled["predicted"].size() == 20);
}

}  // TEST_SUITE
