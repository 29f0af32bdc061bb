#ifndef TSOU_IBGM_HPP
#define TSOU_IBGM_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tsou/ggsm.hpp"
#include "tsou/random.hpp"

namespace tsou {

// Incomplete beta gamma mixture IBGM(beta, gamma, p, eta): the scale mixture
// of GGa(p*gamma - beta, p, theta^p) over the mixing density
//   msharp(theta) = theta^{-1} int_{1/theta}^1 (1-u^p)^{gamma-1} u^{-1-beta} du / C*
// on (1, eta).  Only integer gamma is supported; beta < p*gamma, eta > 1.
struct IBGMParams {
  double beta;
  int gamma_;
  double p;
  double eta;
  IBGMParams(double beta_in, int gamma_in, double p_in, double eta_in);
};

// C* by the closed alternating sum
//   sum_k binom(gamma-1,k) (-1)^k [(pk-beta) log eta - 1 + eta^{beta-pk}]/(pk-beta)^2,
// with the (log eta)^2/2 limb at beta = pk.
double ibgm_cstar(const IBGMParams& params);

// C = Gamma(gamma - beta/p) C* / p.
double ibgm_c(const IBGMParams& params);

double ibgm_pdf(const IBGMParams& params, double v);

// Moments E[W^xi] for xi > beta - gamma*p via the closed sum.
double ibgm_moment(const IBGMParams& params, double xi);

double msharp_pdf(const IBGMParams& params, double theta);
double msharp_cdf(const IBGMParams& params, double y);

// Inverse cdf of msharp_{0,1,p,eta}: eta^{sqrt(u)}.
double msharp0_inverse_cdf(double eta, double u);

// Acceptance ratio of the gamma = 1 proposal used by the MS2 sampler.
double msharp_phi1(const IBGMParams& params, double u);

// Envelope constant V2 of the direct rejection sampler; acceptance 1/V2.
double ibgm_v2(const IBGMParams& params);

// Piecewise-linear upper envelope of a convex density on [0,1] over L
// equal-width intervals (decomposition method; Devroye 1986, IV.3).  Used
// directly as an approximate density: with L in the thousands the total
// envelope mass V_L is within O(1/L^2) of one.
class PiecewiseLinearEnvelope {
 public:
  static PiecewiseLinearEnvelope build(const std::function<double(double)>& f,
                                       int intervals);
  int intervals() const { return static_cast<int>(node_values_.size()) - 1; }
  double total_mass() const { return total_mass_; }  // V_L
  double envelope_value(double w) const;             // V_L * gbar_L(w)
  double draw(RandomStream& s) const;

 private:
  std::vector<double> node_values_;
  std::vector<double> cum_pmf_;
  double width_ = 0.0;
  double total_mass_ = 0.0;
};

enum class MsMethod { MS0, MSCS, MS1, MS2 };

// One draw from msharp_{beta,gamma,p,eta}.  MS0 requires beta = 0, gamma = 1;
// MSCS gamma = 1, beta != 0 (approximate, envelope-based); MS1 any integer
// gamma (numeric cdf inversion); MS2 gamma >= 2.
double sample_msharp(RandomStream& s, const IBGMParams& params, MsMethod method,
                     int envelope_intervals = 2000);

enum class IBGMMethod { Inverse, ARGS, GGSM };

IBGMMethod ibgm_method_from_string(const std::string& name);
std::string to_string(IBGMMethod method);

// gamma = 1 -> ARGS; gamma >= 5 -> Inverse; otherwise GGSM when eta < 1.3
// and ARGS when eta >= 1.3.
IBGMMethod ibgm_auto_method(const IBGMParams& params);

class IBGMSampler {
 public:
  IBGMSampler(const IBGMParams& params, IBGMMethod method,
              int envelope_intervals = 2000);
  ~IBGMSampler();
  IBGMSampler(IBGMSampler&&) noexcept;
  IBGMSampler& operator=(IBGMSampler&&) noexcept;
  IBGMSampler(const IBGMSampler&) = delete;
  IBGMSampler& operator=(const IBGMSampler&) = delete;

  double draw(RandomStream& s, AcceptanceCounter* counter = nullptr) const;
  const IBGMParams& params() const;
  IBGMMethod method() const;
  double phi2(double u) const;  // acceptance ratio of the GGSM path

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double sample_ibgm(RandomStream& s, const IBGMParams& params, IBGMMethod method);

}  // namespace tsou

#endif  // TSOU_IBGM_HPP
