#include "tsou/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>

#include "tsou/numeric.hpp"

namespace tsou {

double BenchReport::median_seconds(const std::string& method,
                                   long long n) const {
  for (const auto& entry : entries) {
    if (entry.method == method && entry.n == n) return entry.seconds;
  }
  throw config_error("BenchReport: no entry for " + method);
}

std::string machine_descriptor() {
  std::string model = "unknown-cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        model = line.substr(colon + 2);
      }
      break;
    }
  }
  return model + " x" + std::to_string(std::thread::hardware_concurrency());
}

namespace {

double time_once(const BenchTask& task, long long n, RandomStream& stream) {
  volatile double sink = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (long long i = 0; i < n; ++i) {
    sink = task.draw(stream);
  }
  const auto stop = std::chrono::steady_clock::now();
  (void)sink;
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

BenchReport run_bench(const std::string& distribution,
                      const std::vector<BenchTask>& tasks,
                      const std::vector<long long>& sizes, int repetitions,
                      std::uint64_t seed) {
  require(!tasks.empty(), "run_bench: need at least one task");
  require(repetitions >= 3, "run_bench: need at least 3 repetitions");
  require(!sizes.empty(), "run_bench: need at least one size");

  BenchReport report;
  report.distribution = distribution;
  report.baseline = tasks.front().method;
  report.seed = seed;
  report.repetitions = repetitions;
  report.machine = machine_descriptor();

  std::vector<std::vector<double>> baseline_seconds(sizes.size());
  std::uint64_t substream = 0;
  RandomStream root(seed);
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      const long long n = sizes[si];
      RandomStream warm = root.substream(substream++);
      time_once(tasks[ti], std::min<long long>(n, 1000), warm);  // warm-up
      std::vector<double> times(static_cast<std::size_t>(repetitions));
      for (auto& t : times) {
        RandomStream stream = root.substream(substream++);
        t = time_once(tasks[ti], n, stream);
      }
      std::sort(times.begin(), times.end());
      const double median = times[times.size() / 2];
      BenchEntry entry;
      entry.method = tasks[ti].method;
      entry.n = n;
      entry.seconds = median;
      if (ti == 0) {
        baseline_seconds[si].push_back(median);
        entry.factor = 1.0;
      } else {
        entry.factor = median / baseline_seconds[si].front();
      }
      report.entries.push_back(entry);
    }
  }
  return report;
}

}  // namespace tsou
