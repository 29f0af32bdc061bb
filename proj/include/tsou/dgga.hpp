#ifndef TSOU_DGGA_HPP
#define TSOU_DGGA_HPP

#include "tsou/random.hpp"

namespace tsou {

// Difference generalized gamma DGGa(gamma, p, eta):
//   h(x) = [F(eta x) - F(x)] / (x log eta),   x > 0,
// with F the GGa(gamma, p, 1) cdf.  Equivalently the scale mixture of
// GGa(gamma, p, theta^p) over the reciprocal density 1/(theta log eta)
// on (1, eta).
struct DGGaParams {
  double gamma_;
  double p;
  double eta;
  DGGaParams(double gamma_in, double p_in, double eta_in);
};

double dgga_pdf(const DGGaParams& params, double x);

// E[X^xi] = Gamma((gamma+xi)/p)/Gamma(gamma/p) * (1 - eta^{-xi})/(xi log eta),
// xi > -gamma; 1 at xi = 0.
double dgga_moment(const DGGaParams& params, double xi);

// Y ~ Ga(gamma/p, 1), Z = eta^U, return Y^{1/p}/Z.
double sample_dgga(RandomStream& s, const DGGaParams& params);

}  // namespace tsou

#endif  // TSOU_DGGA_HPP
