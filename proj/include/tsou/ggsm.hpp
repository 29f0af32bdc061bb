#ifndef TSOU_GGSM_HPP
#define TSOU_GGSM_HPP

#include <functional>

#include "tsou/random.hpp"

namespace tsou {

// Generalized gamma GGa(gamma, p, theta) with density
//   g_{gamma,p,theta}(u) = p theta^{gamma/p} u^{gamma-1} e^{-u^p theta} / Gamma(gamma/p).
// p = 1 is the ordinary gamma distribution with rate theta.
struct GGaParams {
  double gamma_;
  double p;
  double theta;
  GGaParams(double gamma_in, double p_in, double theta_in);
};

double gga_pdf(const GGaParams& params, double u);
double gga_log_pdf(const GGaParams& params, double u);
double gga_cdf(const GGaParams& params, double u);
// E[X^xi] = Gamma((gamma+xi)/p) / (Gamma(gamma/p) theta^{xi/p}), xi > -gamma.
double gga_moment(const GGaParams& params, double xi);
// If X ~ Ga(gamma/p, 1) then (X/theta)^{1/p} ~ GGa(gamma, p, theta).
double sample_gga(RandomStream& s, const GGaParams& params);

// Power density ell_{delta,eta}(x) = (delta+1) x^delta / (eta^{delta+1} - 1)
// on (1, eta); the delta = -1 normalizer is interpreted as 1/log(eta).
struct EllParams {
  double delta;
  double eta;
  EllParams(double delta_in, double eta_in);
};

double ell_pdf(const EllParams& params, double x);
double ell_mean(const EllParams& params);
double ell_inverse_cdf(const EllParams& params, double u);
double sample_ell(RandomStream& s, const EllParams& params);

// Capability record of a mixing distribution m on [a, hi], a > 0, as used by
// the scale-mixture samplers below.  rejection_v and phi refer to the
// envelope f(u) <= V g_{gamma,p,a^p}(u) that holds whenever the mixing
// support is bounded away from zero; phi(u) is the acceptance ratio
// evaluated at u = Y/a^p.
struct MixingDensity {
  double support_lo = 1.0;
  double support_hi = 1.0;
  std::function<double(double)> pdf;  // optional for degenerate mixers
  std::function<double(RandomStream&)> sample;
  double rejection_v = 1.0;
  std::function<double(double)> phi;
};

// Counts proposals and acceptances of a rejection loop.
struct AcceptanceCounter {
  long long proposals = 0;
  long long accepted = 0;
  double rate() const {
    return proposals > 0 ? static_cast<double>(accepted) / proposals : 0.0;
  }
};

inline constexpr long long kMaxRejectionIters = 10'000'000;

// Scale mixture draw via conditioning: Y ~ Ga(gamma/p, 1), Z ~ m,
// return Y^{1/p}/Z.
double ggsm_sample_direct(RandomStream& s, double gamma_, double p,
                          const MixingDensity& mix);

// Rejection against the boundary generalized gamma: propose Y ~ Ga(gamma/p,1),
// accept with probability phi(Y/a^p).  Per-iteration acceptance is 1/V.
double ggsm_sample_rejection(RandomStream& s, double gamma_, double p,
                             const MixingDensity& mix,
                             AcceptanceCounter* counter = nullptr);

// Mixture density f(u) = int g_{gamma,p,theta^p}(u) m(theta) dtheta by
// quadrature over the mixing support.
double ggsm_pdf(double gamma_, double p, const MixingDensity& mix, double u);

// V = a^{-gamma} int theta^gamma m(theta) dtheta by quadrature.
double ggsm_domination_v(double gamma_, const MixingDensity& mix);

}  // namespace tsou

#endif  // TSOU_GGSM_HPP
