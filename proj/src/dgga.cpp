#include "tsou/dgga.hpp"

#include <cmath>

#include "tsou/numeric.hpp"
#include "tsou/special.hpp"

namespace tsou {

DGGaParams::DGGaParams(double gamma_in, double p_in, double eta_in)
    : gamma_(gamma_in), p(p_in), eta(eta_in) {
  require(gamma_ > 0.0 && std::isfinite(gamma_), "DGGaParams: gamma must be > 0");
  require(p > 0.0 && std::isfinite(p), "DGGaParams: p must be > 0");
  require(eta > 1.0 && std::isfinite(eta), "DGGaParams: eta must be > 1");
}

double dgga_pdf(const DGGaParams& params, double x) {
  if (x <= 0.0) {
    throw std::domain_error("dgga_pdf: x must be positive");
  }
  const double a = params.gamma_ / params.p;
  const double xp = std::pow(x, params.p);
  const double hi = reg_lower_gamma(a, std::pow(params.eta, params.p) * xp);
  const double lo = reg_lower_gamma(a, xp);
  return (hi - lo) / (x * std::log(params.eta));
}

double dgga_moment(const DGGaParams& params, double xi) {
  require(xi > -params.gamma_, "dgga_moment: xi must exceed -gamma");
  if (xi == 0.0) return 1.0;
  const double a = params.gamma_ / params.p;
  const double gga_part = std::exp(std::lgamma(a + xi / params.p) - std::lgamma(a));
  const double log_eta = std::log(params.eta);
  return gga_part * -std::expm1(-xi * log_eta) / (xi * log_eta);
}

double sample_dgga(RandomStream& s, const DGGaParams& params) {
  const double y = draw_gamma(s, params.gamma_ / params.p, 1.0);
  const double z = std::pow(params.eta, s.next_uniform());
  return std::pow(y, 1.0 / params.p) / z;
}

}  // namespace tsou
