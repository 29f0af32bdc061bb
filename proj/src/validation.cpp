#include "tsou/validation.hpp"

#include <algorithm>
#include <cmath>

#include "tsou/numeric.hpp"

#ifndef TSOU_BUILD_ID
#define TSOU_BUILD_ID "unknown"
#endif

namespace tsou {

std::string build_id() { return TSOU_BUILD_ID; }

double err_pct(double true_value, double estimate) {
  require(true_value != 0.0, "err_pct: true value must be nonzero");
  return (true_value - estimate) / true_value * 100.0;
}

namespace {

// k-statistics from power sums; long double accumulation keeps the fourth
// order stable at n = 1e5.
struct PowerSums {
  long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  long long n = 0;

  void add(double x) {
    const long double v = x;
    s1 += v;
    s2 += v * v;
    s3 += v * v * v;
    s4 += v * v * v * v;
    ++n;
  }
  void remove(const PowerSums& other) {
    s1 -= other.s1;
    s2 -= other.s2;
    s3 -= other.s3;
    s4 -= other.s4;
    n -= other.n;
  }

  std::array<double, 4> raw_moments() const {
    const long double dn = static_cast<long double>(n);
    return {static_cast<double>(s1 / dn), static_cast<double>(s2 / dn),
            static_cast<double>(s3 / dn), static_cast<double>(s4 / dn)};
  }

  std::array<double, 4> k_stats() const {
    const long double dn = static_cast<long double>(n);
    const long double mu = s1 / dn;
    const long double m2 = s2 / dn - mu * mu;
    const long double m3 = s3 / dn - 3.0L * mu * s2 / dn + 2.0L * mu * mu * mu;
    const long double m4 = s4 / dn - 4.0L * mu * s3 / dn +
                           6.0L * mu * mu * s2 / dn - 3.0L * mu * mu * mu * mu;
    const long double k2 = dn / (dn - 1.0L) * m2;
    const long double k3 = dn * dn / ((dn - 1.0L) * (dn - 2.0L)) * m3;
    const long double k4 = dn * dn *
                           ((dn + 1.0L) * m4 - 3.0L * (dn - 1.0L) * m2 * m2) /
                           ((dn - 1.0L) * (dn - 2.0L) * (dn - 3.0L));
    return {static_cast<double>(mu), static_cast<double>(k2),
            static_cast<double>(k3), static_cast<double>(k4)};
  }

  double statistic(int order, bool cumulant) const {
    return cumulant ? k_stats()[static_cast<std::size_t>(order - 1)]
                    : raw_moments()[static_cast<std::size_t>(order - 1)];
  }
};

}  // namespace

SummaryStats summarize(std::span<const double> sample) {
  require(sample.size() >= 4, "summarize: need at least 4 observations");
  PowerSums sums;
  for (double x : sample) sums.add(x);
  SummaryStats out;
  out.n = sample.size();
  out.raw_moments = sums.raw_moments();
  out.k_stats = sums.k_stats();
  out.mean = out.raw_moments[0];
  return out;
}

double jackknife_se(std::span<const double> sample, int order, bool cumulant,
                    int groups) {
  require(order >= 1 && order <= 4, "jackknife_se: order must be 1..4");
  groups = std::min<int>(groups, static_cast<int>(sample.size() / 8));
  require(groups >= 2, "jackknife_se: sample too small");
  PowerSums total;
  for (double x : sample) total.add(x);
  std::vector<PowerSums> blocks(static_cast<std::size_t>(groups));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    blocks[i % static_cast<std::size_t>(groups)].add(sample[i]);
  }
  std::vector<double> leave_out;
  leave_out.reserve(static_cast<std::size_t>(groups));
  for (const auto& block : blocks) {
    PowerSums rest = total;
    rest.remove(block);
    leave_out.push_back(rest.statistic(order, cumulant));
  }
  double mean = 0.0;
  for (double v : leave_out) mean += v;
  mean /= groups;
  double ss = 0.0;
  for (double v : leave_out) ss += (v - mean) * (v - mean);
  return std::sqrt((groups - 1.0) / groups * ss);
}

namespace {

double ks_q(double lambda) {
  // Q(lambda) = 2 sum_j (-1)^{j-1} e^{-2 j^2 lambda^2}
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-14) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double ks_pvalue(double statistic, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * m / (n + m);
  const double sqrt_ne = std::sqrt(ne);
  return ks_q(statistic * (sqrt_ne + 0.12 + 0.11 / sqrt_ne));
}

double ks_statistic_cdf(std::vector<double> sample,
                        const std::function<double(double)>& cdf) {
  require(!sample.empty(), "ks_statistic_cdf: empty sample");
  std::sort(sample.begin(), sample.end());
  double d = 0.0;
  const double n = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_pvalue_one_sample(double statistic, std::size_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return ks_q(statistic * (sqrt_n + 0.12 + 0.11 / sqrt_n));
}

bool ValidationReport::all_passed() const {
  for (const auto& record : records) {
    if (!record.passed) return false;
  }
  return !records.empty();
}

ValidationReport validate_moments(
    const std::string& target, const std::string& method,
    const std::function<double(RandomStream&)>& draw,
    const std::function<double(int)>& oracle, int max_order, long long n,
    std::uint64_t seed, bool cumulants, double floor_pct) {
  require(max_order >= 1 && max_order <= 4, "validate_moments: orders 1..4");
  require(n >= 100, "validate_moments: n too small");
  if (!oracle) {
    throw config_error("validate_moments: target has no moment oracle");
  }
  ValidationReport report;
  report.target = target;
  report.method = method;
  report.seed = seed;
  report.n = n;
  report.build = build_id();

  RandomStream stream(seed);
  std::vector<double> sample(static_cast<std::size_t>(n));
  for (auto& x : sample) x = draw(stream);

  const auto stats = summarize(sample);
  for (int order = 1; order <= max_order; ++order) {
    ValidationRecord record;
    record.order = order;
    record.true_value = oracle(order);
    record.estimate = cumulants
                          ? stats.k_stats[static_cast<std::size_t>(order - 1)]
                          : stats.raw_moments[static_cast<std::size_t>(order - 1)];
    record.se = jackknife_se(sample, order, cumulants);
    if (record.true_value == 0.0) {
      record.absolute_fallback = true;
      record.err_pct = record.true_value - record.estimate;
      record.tolerance_pct = 5.0 * record.se;
      record.passed = std::abs(record.err_pct) <= record.tolerance_pct;
    } else {
      record.err_pct = err_pct(record.true_value, record.estimate);
      const double sigma_pct =
          std::abs(record.se / record.true_value) * 100.0;
      record.tolerance_pct = std::max(floor_pct, 5.0 * sigma_pct);
      record.passed = std::abs(record.err_pct) <= record.tolerance_pct;
    }
    report.records.push_back(record);
  }
  return report;
}

}  // namespace tsou
