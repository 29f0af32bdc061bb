#ifndef TSOU_BENCH_HPP
#define TSOU_BENCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tsou/random.hpp"

namespace tsou {

struct BenchEntry {
  std::string method;
  long long n = 0;
  double seconds = 0.0;  // median over the repetitions
  double factor = 0.0;   // seconds / baseline seconds at the same n
};

struct BenchReport {
  std::string distribution;
  std::string baseline;
  std::uint64_t seed = 0;
  int repetitions = 0;
  std::string machine;
  std::vector<BenchEntry> entries;
  double median_seconds(const std::string& method, long long n) const;
};

struct BenchTask {
  std::string method;
  std::function<double(RandomStream&)> draw;
};

// Wall-clock medians over `repetitions` runs (>= 3) after one discarded
// warm-up; factors are relative to the first task.
BenchReport run_bench(const std::string& distribution,
                      const std::vector<BenchTask>& tasks,
                      const std::vector<long long>& sizes, int repetitions,
                      std::uint64_t seed);

std::string machine_descriptor();

}  // namespace tsou

#endif  // TSOU_BENCH_HPP
