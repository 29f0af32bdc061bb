#ifndef TSOU_SPECIAL_HPP
#define TSOU_SPECIAL_HPP

#include <cmath>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "tsou/numeric.hpp"

namespace tsou {

// Regularized lower incomplete gamma G_a(x) = gamma(a, x)/Gamma(a),
// the cdf of Ga(a, 1).
inline double reg_lower_gamma(double a, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(a, x);
}

inline double reg_lower_gamma_inv(double a, double q) {
  return boost::math::gamma_p_inv(a, q);
}

// Non-regularized upper incomplete gamma Gamma(a, x) for any real a and
// x > 0.  Boost covers a > 0; negative and zero a go through the recurrence
// Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x})/a, with Gamma(0, x) = E1(x).
inline double upper_gamma(double a, double x) {
  require(x > 0.0, "upper_gamma: x must be positive");
  if (a > 0.0) {
    return boost::math::tgamma(a, x);
  }
  if (a == 0.0) {
    return -boost::math::expint(-x);  // E1(x)
  }
  return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

inline double lgamma(double x) { return std::lgamma(x); }
inline double tgamma(double x) { return std::tgamma(x); }

}  // namespace tsou

#endif  // TSOU_SPECIAL_HPP
