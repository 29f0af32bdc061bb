#ifndef TSOU_QUADRATURE_HPP
#define TSOU_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "tsou/numeric.hpp"

namespace tsou::quad {

// Absolute tolerance target for the normalizing-constant and envelope
// integrals; acceptance rates of the rejection kernels depend on these.
inline constexpr double kDefaultTol = 1e-10;

// Finite interval, endpoint singularities allowed.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = kDefaultTol) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw numeric_error("integrate: empty interval");
  }
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0, l1 = 0.0;
  const double value = integrator.integrate(f, a, b, 1e-12, &error, &l1);
  if (!(error <= abs_tol || error <= 1e-11 * (l1 + 1.0))) {
    throw numeric_error("integrate: requested tolerance not reached");
  }
  return value;
}

// [a, infinity); the integrand must decay.
template <typename F>
double integrate_upper(const F& f, double a, double abs_tol = kDefaultTol) {
  boost::math::quadrature::exp_sinh<double> integrator(15);
  double error = 0.0, l1 = 0.0;
  const double value =
      integrator.integrate([&](double t) { return f(t + a); }, 1e-12, &error, &l1);
  if (!(error <= abs_tol || error <= 1e-11 * (l1 + 1.0))) {
    throw numeric_error("integrate_upper: requested tolerance not reached");
  }
  return value;
}

// Adaptive Gauss-Kronrod; preferred for oscillatory integrands.
template <typename F>
double integrate_osc(const F& f, double a, double b, double rel_tol = 1e-10) {
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 15, rel_tol, &error);
  return value;
}

template <typename F>
std::complex<double> integrate_complex(const F& f, double a, double b) {
  const double re = integrate([&](double t) { return f(t).real(); }, a, b);
  const double im = integrate([&](double t) { return f(t).imag(); }, a, b);
  return {re, im};
}

template <typename F>
std::complex<double> integrate_complex_osc(const F& f, double a, double b) {
  const double re = integrate_osc([&](double t) { return f(t).real(); }, a, b);
  const double im = integrate_osc([&](double t) { return f(t).imag(); }, a, b);
  return {re, im};
}

}  // namespace tsou::quad

#endif  // TSOU_QUADRATURE_HPP
