#ifndef TSOU_IGA_HPP
#define TSOU_IGA_HPP

#include <memory>
#include <string>
#include <vector>

#include "tsou/ggsm.hpp"
#include "tsou/random.hpp"

namespace tsou {

// Incomplete gamma distribution IGa(beta, gamma, p, eta) with density
//   f(u) = G_gamma(u^p (eta-1)) e^{-u^p} u^{-1-beta} / K,   u > 0,
// where G_gamma is the Ga(gamma,1) cdf, eta > 1 and beta < p*gamma.
struct IGaParams {
  double beta;
  double gamma_;
  double p;
  double eta;
  IGaParams(double beta_in, double gamma_in, double p_in, double eta_in);
  bool integer_gamma() const;
  int gamma_int() const;  // throws config_error when gamma is not integral
};

// K* = int_{1/eta}^1 (1-x)^{gamma-1} x^{-beta/p-1} dx, by quadrature.
double iga_kstar(const IGaParams& params);

// Alternating-sum form of K* for integer gamma <= 30 (compensated
// summation); H*_k = binom(gamma-1, k) (eta^{beta-k} - 1)/(beta - k) on the
// p = 1 scale.
double iga_kstar_sum(const IGaParams& params);
std::vector<double> iga_hstar_terms(const IGaParams& params);

// K = Gamma(gamma - beta/p) K* / (p Gamma(gamma)).
double iga_k(const IGaParams& params);

double iga_pdf(const IGaParams& params, double u);

// E[W^xi] = K_{beta-xi} / K_{beta}, valid for xi > beta - p*gamma.
double iga_moment(const IGaParams& params, double xi);

// Mixing density m_{beta,gamma,p,eta}(theta) on (1, eta^{1/p}):
//   m(theta) = p (theta^p - 1)^{gamma-1} theta^{p+beta-p*gamma-1} / K*.
double iga_m_pdf(const IGaParams& params, double theta);

// cdf of the mixing density (integer gamma); evaluated through the p = 1
// reparametrization M_{beta,gamma,p,eta}(y) = M_{beta/p,gamma,1,eta}(y^p).
double iga_m_cdf(const IGaParams& params, double y);

// Inverse cdf of m_{beta,1,1,eta} (the gamma = 1 mixing law).
double m0_inverse_cdf(double beta, double eta, double u);

// Acceptance ratio of the boundary-envelope rejection sampler:
//   phi1(u) = Gamma(gamma+1) (eta-1)^{-gamma} G_gamma((eta-1) u) u^{-gamma}.
double iga_phi1(const IGaParams& params, double u);

enum class MixMethod { M0, M1, M2, M3, BD };

// One draw from m_{beta,gamma,p,eta}.  M0 requires gamma = 1; M1 requires
// gamma > 1; M2 integer gamma; M3 integer gamma >= 2; BD draws from the
// positive-term envelope mixture used by M3.
double sample_m(RandomStream& s, const IGaParams& params, MixMethod method);

enum class IGaMethod { ARGS, Inverse, ARBD, ARG };

IGaMethod iga_method_from_string(const std::string& name);
std::string to_string(IGaMethod method);

// Envelope constants of the rejection samplers.
struct IGaConstants {
  double kstar = 0.0;
  double k = 0.0;
  double v1 = 0.0;      // ARG envelope; acceptance 1/V1
  double v1star = 0.0;  // M1 envelope (gamma > 1)
  double v2star = 0.0;  // M3 envelope (integer gamma >= 2)
  std::vector<double> h_terms;
};
IGaConstants make_iga_constants(const IGaParams& params);

// Immutable sampling plan: constants, coefficient tables and sub-sampler
// parameters are prepared once so the per-draw path is allocation-free.
class IGaSampler {
 public:
  IGaSampler(const IGaParams& params, IGaMethod method);
  ~IGaSampler();
  IGaSampler(IGaSampler&&) noexcept;
  IGaSampler& operator=(IGaSampler&&) noexcept;
  IGaSampler(const IGaSampler&) = delete;
  IGaSampler& operator=(const IGaSampler&) = delete;

  double draw(RandomStream& s, AcceptanceCounter* counter = nullptr) const;
  const IGaParams& params() const;
  IGaMethod method() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double sample_iga(RandomStream& s, const IGaParams& params, IGaMethod method);

// MixingDensity record so the generic scale-mixture kernels can be run
// against this law; pair with mixture order p*gamma - beta.
MixingDensity iga_mixing_density(const IGaParams& params);

}  // namespace tsou

#endif  // TSOU_IGA_HPP
