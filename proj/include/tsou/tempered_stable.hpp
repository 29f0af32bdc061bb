#ifndef TSOU_TEMPERED_STABLE_HPP
#define TSOU_TEMPERED_STABLE_HPP

#include <complex>
#include <memory>
#include <vector>

#include "tsou/random.hpp"

namespace tsou {

struct RosinskiAtom {
  double location;  // nonzero
  double weight;    // > 0
};

// Finite discrete measure on the real line; the directional/scale component
// of a tempered stable law.
class RosinskiMeasure {
 public:
  explicit RosinskiMeasure(std::vector<RosinskiAtom> atoms);
  const std::vector<RosinskiAtom>& atoms() const { return atoms_; }
  double total_mass() const { return total_mass_; }
  double moment(int k) const;  // sum_i w_i x_i^k
  RosinskiMeasure scaled(double factor) const;
  // Atom index with probability weight/total (normalized measure R^1).
  std::size_t sample_atom(RandomStream& s) const;

 private:
  std::vector<RosinskiAtom> atoms_;
  std::vector<double> cum_weights_;
  double total_mass_ = 0.0;
};

// Single positive atom c beta^alpha at 1/beta (the rapidly-decreasing case;
// classical tempered stable when p = 1).
RosinskiMeasure rdts_measure(double c, double beta_temper, double alpha);
RosinskiMeasure bilateral_measure(double c_minus, double beta_minus,
                                  double c_plus, double beta_plus,
                                  double alpha);

// TS^p_alpha(R, b): infinitely divisible law with Levy measure
//   M(B) = int int 1_B(x t) t^{-1-alpha} e^{-t^p} dt R(dx),
// alpha < 2, p > 0, plus shift b.
struct TSParams {
  double alpha;
  double p;
  RosinskiMeasure r;
  double b;
  TSParams(double alpha_in, double p_in, RosinskiMeasure r_in, double b_in);
  // 1 + floor(alpha/p) for alpha in (0,2), otherwise 1.
  int gamma_convention() const;
};

// k-th cumulant: p^{-1} Gamma((k-alpha)/p) int x^k R(dx) + 1_{k=1} b for
// alpha < 1; for alpha in [1,2) the k = 1 cumulant is b alone.
double ts_cumulant(const TSParams& params, int k);

// Characteristic exponent c(z) (log of the characteristic function) by
// quadrature; the numeric oracle for the samplers.
std::complex<double> ts_char_exponent(const TSParams& params, double z);

// Tail of the radial Levy density: U(x) = int_x^inf t^{-1-alpha} e^{-t^p} dt
// = Gamma(-alpha/p, x^p)/p, and the mean of the part below x.
double levy_radial_tail(double alpha, double p, double x);
double levy_radial_mean_below(double alpha, double p, double x);
double levy_radial_mean_total(double alpha, double p);

// alpha < 0: compound Poisson with N ~ Poisson(R(Re) Gamma(|alpha|/p)/p),
// jumps x_i * T with T ~ GGa(|alpha|, p, 1), plus the shift.
double sample_ts_cp(RandomStream& s, const TSParams& params);

// p = 1, alpha in (0,1): exact classical-tempered-stable draw per atom via
// exponentially tilted positive stable (Kanter proposal, e^{-theta S}
// thinning).
double sample_ts_cts(RandomStream& s, const TSParams& params);

// alpha in [0,1), any p: truncated shot-noise series.  Jumps above a cutoff
// eps arrive with Poisson count mass*U(eps) and sizes U^{-1}(V U(eps)); the
// discarded small-jump sum is replaced by its exact mean.  The cutoff is
// chosen so the truncated second-moment mass is below tail_tol of the total,
// which leaves the first cumulant exact and the second biased by at most
// tail_tol relatively.
class SeriesSampler {
 public:
  struct Options {
    double tail_tol = 1e-4;
    double max_expected_jumps = 1e6;
  };
  explicit SeriesSampler(const TSParams& params);
  SeriesSampler(const TSParams& params, Options options);
  ~SeriesSampler();
  SeriesSampler(SeriesSampler&&) noexcept;
  SeriesSampler& operator=(SeriesSampler&&) noexcept;
  SeriesSampler(const SeriesSampler&) = delete;
  SeriesSampler& operator=(const SeriesSampler&) = delete;

  double draw(RandomStream& s) const;
  double cutoff() const;
  double expected_jumps() const;  // over all atoms
  double compensation() const;    // deterministic small-jump mean

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double sample_ts_series(RandomStream& s, const TSParams& params,
                        double tail_tol = 1e-4);

// Draw from whichever regime covers the parameters (alpha < 0 compound
// Poisson, p = 1 exact, otherwise series); alpha >= 1 is not supported.
class TempStableSampler {
 public:
  explicit TempStableSampler(const TSParams& params,
                             SeriesSampler::Options options = {});
  ~TempStableSampler();
  TempStableSampler(TempStableSampler&&) noexcept;
  TempStableSampler& operator=(TempStableSampler&&) noexcept;
  TempStableSampler(const TempStableSampler&) = delete;
  TempStableSampler& operator=(const TempStableSampler&) = delete;

  double draw(RandomStream& s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tsou

#endif  // TSOU_TEMPERED_STABLE_HPP
