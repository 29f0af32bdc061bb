#ifndef TSOU_OU_HPP
#define TSOU_OU_HPP

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "tsou/dgga.hpp"
#include "tsou/ibgm.hpp"
#include "tsou/iga.hpp"
#include "tsou/random.hpp"
#include "tsou/tempered_stable.hpp"

namespace tsou {

enum class OUKind { TSOU, OUTS };

// dY = -lambda Y dt + dL.  For TSOU the stationary law is TS^p_alpha(R, b)
// (needs alpha in [0,2)); for OUTS the driving Levy process has
// TS^p_alpha(lambda R, lambda b) as its time-one distribution, any alpha < 2.
struct OUSpec {
  double lambda_;
  OUKind kind;
  TSParams ts;
  OUSpec(double lambda_in, OUKind kind_in, TSParams ts_in);
};

struct OUSamplerOptions {
  IGaMethod iga_method = IGaMethod::ARGS;
  std::optional<IBGMMethod> ibgm_method;  // default: auto-select per params
  double series_tail_tol = 1e-4;
  int envelope_intervals = 2000;
};

// Everything needed to draw Y_{s+t} given Y_s: the deterministic decay, the
// drift corrections, the residual tempered-stable components, and the
// compound-Poisson jump factors.  Immutable once built; shared across paths.
class TransitionDecomposition {
 public:
  static TransitionDecomposition build(const OUSpec& spec, double t,
                                       const OUSamplerOptions& options = {});
  ~TransitionDecomposition();
  TransitionDecomposition(TransitionDecomposition&&) noexcept;
  TransitionDecomposition& operator=(TransitionDecomposition&&) noexcept;
  TransitionDecomposition(const TransitionDecomposition&) = delete;
  TransitionDecomposition& operator=(const TransitionDecomposition&) = delete;

  double sample(RandomStream& s, double y) const;

  double decay() const;            // e^{-lambda t}
  double poisson_mean() const;
  double drift_correction() const;  // sum of the b_n terms
  const std::vector<double>& drift_terms() const;
  int gamma_conv() const;
  double eta() const;  // e^{p lambda t} for TSOU, e^{lambda t} for OUTS
  // Residual component masses (R_n scalings), n = 0..gamma-1; a zero mass
  // means the component is degenerate at zero.
  const std::vector<double>& component_masses() const;

 private:
  TransitionDecomposition();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double sample_transition(RandomStream& s, const TransitionDecomposition& d,
                         double y);

// Closed-form k-th cumulant of the conditional law of Y_{s+t} given Y_s = y.
double transition_cumulant(const OUSpec& spec, int k, double y, double t);

// Characteristic function of the transition law of an OUTS process by
// quadrature of its exponent; the validation oracle for the samplers.
std::complex<double> transition_cf(const OUSpec& spec, double y, double t,
                                   double z);

struct TrajectoryGrid {
  double t_step;
  int n_steps;
  int n_paths;
  double y0;
  TrajectoryGrid(double t_step_in, int n_steps_in, int n_paths_in, double y0_in);
};

// Row-major (path, step) matrix with n_steps+1 columns.
struct PathMatrix {
  int n_paths = 0;
  int n_steps = 0;
  double t_step = 0.0;
  std::vector<double> values;
  double at(int path, int step) const {
    return values[static_cast<std::size_t>(path) * (n_steps + 1) + step];
  }
  std::vector<double> times() const;
};

// Markov recursion with one derived substream per path; the decomposition is
// built once and shared.
PathMatrix simulate_paths(RandomStream& s, const OUSpec& spec,
                          const TrajectoryGrid& grid,
                          const OUSamplerOptions& options = {});

}  // namespace tsou

#endif  // TSOU_OU_HPP
