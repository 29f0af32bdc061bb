#ifndef TSOU_NUMERIC_HPP
#define TSOU_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsou {

// Sampler or solver configured inconsistently (method/parameter mismatch,
// unusable envelope constant, truncation budget exceeded, ...).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative numeric routine failed to converge or a quadrature failed.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |s| below this switches removable-singularity limbs to their log form.
inline constexpr double kLimitEps = 1e-8;

// (y^s - 1)/s evaluated as expm1(s*log y)/s, with the s -> 0 limit log y.
inline double ratio_powm1(double log_y, double s) {
  if (std::abs(s) < kLimitEps) {
    return log_y * (1.0 + 0.5 * s * log_y);
  }
  return std::expm1(s * log_y) / s;
}

// (s*log y - 1 + y^{-s})/s^2, with the s -> 0 limit (log y)^2/2.
// Series in u = s*log y near 0 avoids the catastrophic cancellation.
inline double log_bracket(double log_y, double s) {
  const double u = s * log_y;
  if (std::abs(u) < 1e-4) {
    return log_y * log_y *
           (0.5 - u / 6.0 + u * u / 24.0 - u * u * u / 120.0);
  }
  return (u - 1.0 + std::exp(-u)) / (s * s);
}

// int_1^Y t^{s-1} log t dt = (Y^s (s*log Y - 1) + 1)/s^2 with Y = e^{log_y}.
// Limit (log y)^2/2 as s -> 0.
inline double pos_log_bracket(double log_y, double s) {
  const double u = s * log_y;
  if (std::abs(u) < 1e-4) {
    return log_y * log_y * (0.5 + u / 3.0 + u * u / 8.0 + u * u * u / 30.0);
  }
  return (std::exp(u) * (u - 1.0) + 1.0) / (s * s);
}

// Compensated (Kahan) accumulator for the alternating binomial sums.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = total_ + y;
    carry_ = (t - total_) - y;
    total_ = t;
  }
  double value() const { return total_; }

 private:
  double total_ = 0.0;
  double carry_ = 0.0;
};

// Row n of Pascal's triangle. Exact in double for n <= 50; the alternating
// sums reject earlier than that anyway.
inline std::vector<double> binomial_row(int n) {
  if (n < 0 || n > 50) {
    throw config_error("binomial_row: order " + std::to_string(n) +
                       " outside the supported range [0, 50]");
  }
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    row[static_cast<std::size_t>(k) + 1] =
        row[static_cast<std::size_t>(k)] * static_cast<double>(n - k) /
        static_cast<double>(k + 1);
  }
  return row;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline bool is_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol;
}

}  // namespace tsou

#endif  // TSOU_NUMERIC_HPP
