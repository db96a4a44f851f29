#include "cli_common.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "grasslearn/numerics.hpp"

namespace fs = std::filesystem;

namespace grasslearn::cli {

int thread_cap() {
  if (const char* env = std::getenv("GRASSLEARN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Json make_report(uint64_t seed, Json config) {
  return Json{{"seed", seed},
              {"config", std::move(config)},
              {"versions",
               {{"grasslearn", "0.1.0"},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)}}}};
}

void finalize_report(Json& report, const Timer& timer) {
  report["wall_time_ms"] = timer.elapsed_ms();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw DataError(path + ": write failed");
}

namespace {

std::string point_name(size_t i) {
  std::string digits = std::to_string(i);
  return "point_" + std::string(5 - std::min<size_t>(5, digits.size()), '0') +
         digits + ".csv";
}

}  // namespace

void write_grassmann_set(const std::string& dir,
                         const std::vector<GrassmannPoint>& points,
                         const std::vector<int>* labels, Json meta) {
  require_dim(!points.empty(), "write_grassmann_set: empty point set");
  fs::create_directories(dir);
  meta["points"] = points.size();
  meta["n"] = points.front().n();
  meta["k"] = points.front().k();
  write_json_file((fs::path(dir) / "meta.json").string(), meta);
  for (size_t i = 0; i < points.size(); ++i)
    write_matrix_csv((fs::path(dir) / point_name(i)).string(), points[i].basis());
  if (labels) {
    require_dim(labels->size() == points.size(),
                "write_grassmann_set: label count mismatch");
    write_labels_csv((fs::path(dir) / "labels.csv").string(), *labels);
  }
}

StoredSet read_grassmann_set(const std::string& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("point_", 0) == 0 && name.size() > 4 &&
        name.substr(name.size() - 4) == ".csv")
      files.push_back(entry.path());
  }
  if (files.empty()) throw DataError(dir + ": no point_*.csv files");
  std::sort(files.begin(), files.end());
  StoredSet stored;
  stored.points.reserve(files.size());
  for (const auto& path : files)
    stored.points.push_back(load_grassmann_csv(path.string()).point);
  const fs::path labels_path = fs::path(dir) / "labels.csv";
  if (fs::exists(labels_path)) {
    stored.labels = read_labels_csv(labels_path.string());
    if (stored.labels.size() != stored.points.size())
      throw DataError(dir + ": labels.csv row count does not match the points");
  }
  const fs::path meta_path = fs::path(dir) / "meta.json";
  if (fs::exists(meta_path)) stored.meta = read_json_file(meta_path.string());
  return stored;
}

LabeledGrassmannSet as_labeled(const StoredSet& stored) {
  if (stored.labels.empty())
    throw DataError("labeled set required but labels.csv is missing");
  LabeledGrassmannSet data{stored.points, stored.labels};
  validate(data);
  return data;
}

std::vector<int> read_labels_csv(const std::string& path) {
  const Matrix raw = read_matrix_csv(path);
  if (raw.cols() != 1) throw DataError(path + ": labels must be a single column");
  std::vector<int> labels(static_cast<size_t>(raw.rows()));
  for (Index i = 0; i < raw.rows(); ++i) {
    const double v = raw(i, 0);
    if (std::abs(v - std::nearbyint(v)) > 1e-9)
      throw DataError(path + ": non-integer label at line " + std::to_string(i + 1));
    labels[static_cast<size_t>(i)] = static_cast<int>(std::nearbyint(v));
  }
  return labels;
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  Matrix column(static_cast<Index>(labels.size()), 1);
  for (size_t i = 0; i < labels.size(); ++i)
    column(static_cast<Index>(i), 0) = labels[i];
  write_matrix_csv(path, column);
}

OptimConfig OptimFlags::resolve() const {
  OptimConfig config;
  if (max_iters > 0) config.max_iters = max_iters;
  if (grad_tol > 0.0) config.grad_tol = grad_tol;
  validate(config);
  return config;
}

}  // namespace grasslearn::cli
