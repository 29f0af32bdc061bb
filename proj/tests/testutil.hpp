#ifndef TSOU_TESTS_TESTUTIL_HPP
#define TSOU_TESTS_TESTUTIL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tsou/random.hpp"

namespace testutil {

// Independent quadrature path for the test-side oracles (Gauss-Kronrod
// rather than the library's tanh-sinh).
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-11) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, rel_tol, &error);
}

inline std::vector<double> draw_many(
    tsou::RandomStream& s, long long n,
    const std::function<double(tsou::RandomStream&)>& draw) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = draw(s);
  return out;
}

inline double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline double variance(const std::vector<double>& xs) {
  const double mu = mean(xs);
  double sum = 0.0;
  for (double x : xs) sum += (x - mu) * (x - mu);
  return sum / (static_cast<double>(xs.size()) - 1.0);
}

inline double moment(const std::vector<double>& xs, int k) {
  double sum = 0.0;
  for (double x : xs) sum += std::pow(x, k);
  return sum / static_cast<double>(xs.size());
}

// Standard error of the k-th raw moment estimate.
inline double moment_se(const std::vector<double>& xs, int k) {
  std::vector<double> powers(xs.size());
  std::transform(xs.begin(), xs.end(), powers.begin(),
                 [k](double x) { return std::pow(x, k); });
  return std::sqrt(variance(powers) / static_cast<double>(xs.size()));
}

inline double correlation(const std::vector<double>& a,
                          const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double num = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return num / std::sqrt(va * vb);
}

// Tabulated-cdf inversion sampler: oracle draws for distributions whose pdf
// is available.  The grid cdf is built by cumulative quadrature of the pdf.
class NumericInverseCdf {
 public:
  NumericInverseCdf(const std::function<double(double)>& pdf, double lo,
                    double hi, int nodes = 4096)
      : lo_(lo), hi_(hi) {
    grid_.resize(static_cast<std::size_t>(nodes) + 1);
    cdf_.resize(grid_.size());
    const double h = (hi - lo) / nodes;
    grid_[0] = lo;
    cdf_[0] = 0.0;
    for (int i = 1; i <= nodes; ++i) {
      grid_[static_cast<std::size_t>(i)] = lo + h * i;
      cdf_[static_cast<std::size_t>(i)] =
          cdf_[static_cast<std::size_t>(i) - 1] +
          integrate(pdf, grid_[static_cast<std::size_t>(i) - 1],
                    grid_[static_cast<std::size_t>(i)]);
    }
    const double total = cdf_.back();
    for (auto& c : cdf_) c /= total;
  }

  double operator()(double u) const {
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return grid_.front();
    if (it == cdf_.end()) return grid_.back();
    const std::size_t j =
        static_cast<std::size_t>(std::distance(cdf_.begin(), it));
    const double t = (u - cdf_[j - 1]) / (cdf_[j] - cdf_[j - 1]);
    return grid_[j - 1] + t * (grid_[j] - grid_[j - 1]);
  }

  double draw(tsou::RandomStream& s) const { return (*this)(s.next_uniform()); }

 private:
  double lo_, hi_;
  std::vector<double> grid_;
  std::vector<double> cdf_;
};

}  // namespace testutil

#endif  // TSOU_TESTS_TESTUTIL_HPP
