#include "tsou/ggsm.hpp"

#include <cmath>

#include "tsou/numeric.hpp"
#include "tsou/quadrature.hpp"
#include "tsou/special.hpp"

namespace tsou {

GGaParams::GGaParams(double gamma_in, double p_in, double theta_in)
    : gamma_(gamma_in), p(p_in), theta(theta_in) {
  require(gamma_ > 0.0 && std::isfinite(gamma_), "GGaParams: gamma must be > 0");
  require(p > 0.0 && std::isfinite(p), "GGaParams: p must be > 0");
  require(theta > 0.0 && std::isfinite(theta), "GGaParams: theta must be > 0");
}

double gga_log_pdf(const GGaParams& params, double u) {
  if (u <= 0.0) {
    throw std::domain_error("gga_pdf: u must be positive");
  }
  const double a = params.gamma_ / params.p;
  return std::log(params.p) + a * std::log(params.theta) +
         (params.gamma_ - 1.0) * std::log(u) -
         std::pow(u, params.p) * params.theta - std::lgamma(a);
}

double gga_pdf(const GGaParams& params, double u) {
  return std::exp(gga_log_pdf(params, u));
}

double gga_cdf(const GGaParams& params, double u) {
  if (u <= 0.0) return 0.0;
  return reg_lower_gamma(params.gamma_ / params.p,
                         std::pow(u, params.p) * params.theta);
}

double gga_moment(const GGaParams& params, double xi) {
  require(xi > -params.gamma_, "gga_moment: xi must exceed -gamma");
  const double a = params.gamma_ / params.p;
  return std::exp(std::lgamma(a + xi / params.p) - std::lgamma(a) -
                  (xi / params.p) * std::log(params.theta));
}

double sample_gga(RandomStream& s, const GGaParams& params) {
  double value;
  do {
    const double y = draw_gamma(s, params.gamma_ / params.p, 1.0);
    value = std::pow(y / params.theta, 1.0 / params.p);
  } while (value <= 0.0);
  return value;
}

EllParams::EllParams(double delta_in, double eta_in)
    : delta(delta_in), eta(eta_in) {
  require(std::isfinite(delta), "EllParams: delta must be finite");
  require(eta > 1.0 && std::isfinite(eta), "EllParams: eta must be > 1");
}

double ell_pdf(const EllParams& params, double x) {
  if (x <= 1.0 || x >= params.eta) return 0.0;
  const double log_eta = std::log(params.eta);
  const double norm = ratio_powm1(log_eta, params.delta + 1.0);
  return std::pow(x, params.delta) / norm;
}

double ell_mean(const EllParams& params) {
  const double log_eta = std::log(params.eta);
  return ratio_powm1(log_eta, params.delta + 2.0) /
         ratio_powm1(log_eta, params.delta + 1.0);
}

double ell_inverse_cdf(const EllParams& params, double u) {
  const double d1 = params.delta + 1.0;
  if (std::abs(d1) < kLimitEps) {
    return std::pow(params.eta, u);
  }
  return std::pow(1.0 + u * (std::pow(params.eta, d1) - 1.0), 1.0 / d1);
}

double sample_ell(RandomStream& s, const EllParams& params) {
  return ell_inverse_cdf(params, s.next_uniform());
}

double ggsm_sample_direct(RandomStream& s, double gamma_, double p,
                          const MixingDensity& mix) {
  const double y = draw_gamma(s, gamma_ / p, 1.0);
  const double z = mix.sample(s);
  return std::pow(y, 1.0 / p) / z;
}

double ggsm_sample_rejection(RandomStream& s, double gamma_, double p,
                             const MixingDensity& mix,
                             AcceptanceCounter* counter) {
  require(mix.support_lo > 0.0, "ggsm_sample_rejection: support must be >= a > 0");
  if (!std::isfinite(mix.rejection_v)) {
    throw config_error("ggsm_sample_rejection: envelope constant V is not finite");
  }
  const double a = mix.support_lo;
  const double ap = std::pow(a, p);
  for (long long iter = 0; iter < kMaxRejectionIters; ++iter) {
    const double u = s.next_uniform();
    const double y = draw_gamma(s, gamma_ / p, 1.0);
    if (counter) ++counter->proposals;
    if (u <= mix.phi(y / ap)) {
      if (counter) ++counter->accepted;
      return std::pow(y, 1.0 / p) / a;
    }
  }
  throw config_error(
      "ggsm_sample_rejection: no acceptance within the iteration cap; "
      "the acceptance ratio phi is misconfigured");
}

double ggsm_pdf(double gamma_, double p, const MixingDensity& mix, double u) {
  if (u <= 0.0) {
    throw std::domain_error("ggsm_pdf: u must be positive");
  }
  return quad::integrate(
      [&](double theta) {
        return gga_pdf(GGaParams(gamma_, p, std::pow(theta, p)), u) *
               mix.pdf(theta);
      },
      mix.support_lo, mix.support_hi);
}

double ggsm_domination_v(double gamma_, const MixingDensity& mix) {
  const double integral = quad::integrate(
      [&](double theta) { return std::pow(theta, gamma_) * mix.pdf(theta); },
      mix.support_lo, mix.support_hi);
  return integral / std::pow(mix.support_lo, gamma_);
}

}  // namespace tsou
