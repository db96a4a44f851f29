#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "grasslearn/gda.hpp"
#include "grasslearn/serialize.hpp"

namespace grasslearn::cli {

// Wall clock for the report's wall_time_ms field.
class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// GRASSLEARN_THREADS caps worker count; unset falls back to the hardware.
int thread_cap();

// Runs fn(0..count-1) on up to thread_cap() workers. fn must only touch its
// own slot of any shared output. The first exception is rethrown after join.
void parallel_for(int count, const std::function<void(int)>& fn);

// Every report carries seed, the effective config, library versions and
// (once finalize_report runs) the wall time.
Json make_report(uint64_t seed, Json config);
void finalize_report(Json& report, const Timer& timer);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// On-disk labeled subspace set: meta.json with the point count, one
// point_NNNNN.csv per subspace, optional labels.csv (one integer per row).
struct StoredSet {
  std::vector<GrassmannPoint> points;
  std::vector<int> labels;  // empty when labels.csv is absent
  Json meta;
};

void write_grassmann_set(const std::string& dir,
                         const std::vector<GrassmannPoint>& points,
                         const std::vector<int>* labels, Json meta);
StoredSet read_grassmann_set(const std::string& dir);
LabeledGrassmannSet as_labeled(const StoredSet& stored);

std::vector<int> read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

// Flags shared by the optimizer-backed subcommands; zero-initialized fields
// mean "keep the default".
struct OptimFlags {
  int max_iters = 0;
  double grad_tol = 0.0;
  OptimConfig resolve() const;
};

}  // namespace grasslearn::cli
