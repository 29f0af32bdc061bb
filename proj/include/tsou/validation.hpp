#ifndef TSOU_VALIDATION_HPP
#define TSOU_VALIDATION_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tsou/random.hpp"

namespace tsou {

// Build identifier baked in at configure time (git describe).
std::string build_id();

// (true - estimate)/true * 100; the caller must handle true = 0 separately.
double err_pct(double true_value, double estimate);

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::array<double, 4> raw_moments{};   // m1..m4
  std::array<double, 4> k_stats{};       // unbiased cumulant estimators k1..k4
};
SummaryStats summarize(std::span<const double> sample);

// Standard error of the selected statistic (raw moment or k-statistic of the
// given order) by grouped jackknife.
double jackknife_se(std::span<const double> sample, int order, bool cumulant,
                    int groups = 50);

// Two-sample Kolmogorov-Smirnov.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_pvalue(double statistic, std::size_t n, std::size_t m);
// One-sample against a cdf.
double ks_statistic_cdf(std::vector<double> sample,
                        const std::function<double(double)>& cdf);
double ks_pvalue_one_sample(double statistic, std::size_t n);

struct ValidationRecord {
  int order = 0;
  double true_value = 0.0;
  double estimate = 0.0;
  double err_pct = 0.0;        // absolute error when absolute_fallback is set
  double se = 0.0;             // jackknife standard error of the estimate
  double tolerance_pct = 0.0;  // pass threshold applied to |err_pct|
  bool absolute_fallback = false;
  bool passed = false;
};

struct ValidationReport {
  std::string target;
  std::string method;
  std::uint64_t seed = 0;
  long long n = 0;
  std::string build;
  std::vector<ValidationRecord> records;
  bool all_passed() const;
};

// Draws n samples, compares empirical raw moments (or k-statistics when
// cumulants is set) of orders 1..max_order against the oracle.  The pass
// threshold per order is max(floor_pct, 5 sigma_jackknife relative).
ValidationReport validate_moments(
    const std::string& target, const std::string& method,
    const std::function<double(RandomStream&)>& draw,
    const std::function<double(int)>& oracle, int max_order, long long n,
    std::uint64_t seed, bool cumulants, double floor_pct = 5.0);

}  // namespace tsou

#endif  // TSOU_VALIDATION_HPP
