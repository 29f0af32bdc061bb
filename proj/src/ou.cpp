#include "tsou/ou.hpp"

#include <cmath>

#include "tsou/numeric.hpp"
#include "tsou/quadrature.hpp"
#include "tsou/special.hpp"

namespace tsou {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// kappa_{lambda,t,n} = int_{e^{-lambda t}}^1 (1-u^p)^n / n! u^{-1-alpha} du.
double kappa_scaling(double lambda, double t, int n, double alpha, double p) {
  const double lo = std::exp(-lambda * t);
  const double value = quad::integrate(
      [&](double u) {
        return std::pow(1.0 - std::pow(u, p), n) * std::pow(u, -1.0 - alpha);
      },
      lo, 1.0);
  return value / factorial(n);
}

}  // namespace

OUSpec::OUSpec(double lambda_in, OUKind kind_in, TSParams ts_in)
    : lambda_(lambda_in), kind(kind_in), ts(std::move(ts_in)) {
  require(lambda_ > 0.0 && std::isfinite(lambda_), "OUSpec: lambda must be > 0");
  if (kind == OUKind::TSOU) {
    require(ts.alpha >= 0.0,
            "OUSpec: a TSOU stationary law needs alpha in [0,2); tempered "
            "stable laws with alpha < 0 are not selfdecomposable");
  }
}

struct TransitionDecomposition::Impl {
  OUKind kind;
  double shift_b = 0.0;
  double decay = 0.0;
  double shift_coeff = 0.0;  // 1 - e^{-lambda t}
  double pois_mean = 0.0;
  double drift_total = 0.0;
  std::vector<double> drift_terms;
  std::vector<double> comp_masses;
  int gamma = 1;
  double eta = 1.0;

  struct Component {
    TSParams law;
    double multiplier;
    std::optional<TempStableSampler> sampler;
  };
  std::vector<Component> comps;

  std::optional<IGaSampler> iga;
  std::optional<IBGMSampler> ibgm;
  std::optional<DGGaParams> dgga;

  const RosinskiMeasure* measure() const { return measure_.get(); }
  std::shared_ptr<RosinskiMeasure> measure_;
  bool single_atom = false;
  double atom_value = 0.0;

  void add_component(const TSParams& base, double alpha, double mass,
                     double multiplier, const OUSamplerOptions& options) {
    comp_masses.push_back(mass);
    if (mass <= 0.0) return;
    TSParams law(alpha, base.p, base.r.scaled(mass), 0.0);
    Component comp{law, multiplier, std::nullopt};
    if (alpha < 1.0) {
      comp.sampler.emplace(law,
                           SeriesSampler::Options{options.series_tail_tol, 1e6});
    }
    comps.push_back(std::move(comp));
  }

  double draw_atom(RandomStream& s) const {
    if (single_atom) return atom_value;
    return measure_->atoms()[measure_->sample_atom(s)].location;
  }

  double draw_jump_factor(RandomStream& s) const {
    if (iga) return iga->draw(s);
    if (ibgm) return ibgm->draw(s);
    return sample_dgga(s, *dgga);
  }

  double sample(RandomStream& s, double y) const {
    double value = decay * y + shift_coeff * shift_b - drift_total;
    for (const auto& comp : comps) {
      if (!comp.sampler) {
        throw config_error(
            "sample_transition: a residual component has alpha >= 1, which "
            "is outside the supported sampling range");
      }
      value += comp.multiplier * comp.sampler->draw(s);
    }
    const long long n = draw_poisson(s, pois_mean);
    for (long long j = 0; j < n; ++j) {
      value += draw_atom(s) * draw_jump_factor(s);
    }
    return value;
  }
};

TransitionDecomposition::TransitionDecomposition() = default;
TransitionDecomposition::~TransitionDecomposition() = default;
TransitionDecomposition::TransitionDecomposition(
    TransitionDecomposition&&) noexcept = default;
TransitionDecomposition& TransitionDecomposition::operator=(
    TransitionDecomposition&&) noexcept = default;

TransitionDecomposition TransitionDecomposition::build(
    const OUSpec& spec, double t, const OUSamplerOptions& options) {
  require(t > 0.0 && std::isfinite(t), "TransitionDecomposition: t must be > 0");
  const double alpha = spec.ts.alpha;
  const double p = spec.ts.p;
  const double lambda = spec.lambda_;
  const RosinskiMeasure& r = spec.ts.r;

  TransitionDecomposition result;
  result.impl_ = std::make_unique<Impl>();
  Impl& d = *result.impl_;
  d.kind = spec.kind;
  d.shift_b = spec.ts.b;
  d.decay = std::exp(-lambda * t);
  d.shift_coeff = -std::expm1(-lambda * t);
  d.measure_ = std::make_shared<RosinskiMeasure>(r);
  d.single_atom = r.atoms().size() == 1;
  if (d.single_atom) d.atom_value = r.atoms()[0].location;
  d.gamma = spec.ts.gamma_convention();

  if (spec.kind == OUKind::TSOU) {
    if (alpha < 0.0) {
      throw config_error("TransitionDecomposition: TSOU requires alpha >= 0");
    }
    d.eta = std::exp(p * lambda * t);
    const IGaParams w_params(alpha, d.gamma, p, d.eta);
    d.iga.emplace(w_params, options.iga_method);
    d.pois_mean = std::exp(-alpha * lambda * t) * r.total_mass() * iga_k(w_params);

    // X_0 carries no e^{-lambda t} factor here; X_1..X_{gamma-1} do.
    d.add_component(spec.ts, alpha, -std::expm1(-alpha * lambda * t), 1.0,
                    options);
    double b0 = 0.0;
    if (alpha >= 1.0) {
      const IGaParams shifted(alpha - 1.0, d.gamma, p, d.eta);
      b0 = std::exp(-alpha * lambda * t) * r.moment(1) * iga_k(shifted);
    }
    d.drift_terms.push_back(b0);
    for (int n = 1; n <= d.gamma - 1; ++n) {
      const double mass =
          std::pow(-std::expm1(-p * lambda * t), n) / factorial(n);
      d.add_component(spec.ts, alpha - n * p, mass, d.decay, options);
      double bn = 0.0;
      if (alpha >= 1.0 && alpha < 1.0 + n * p) {
        bn = d.decay * mass * r.moment(1) *
             std::tgamma((1.0 - alpha + n * p) / p) / p;
      }
      d.drift_terms.push_back(bn);
    }
  } else if (alpha >= 0.0) {
    d.eta = std::exp(lambda * t);
    const IBGMParams w_params(alpha, d.gamma, p, d.eta);
    const IBGMMethod method =
        options.ibgm_method ? *options.ibgm_method : ibgm_auto_method(w_params);
    d.ibgm.emplace(w_params, method, options.envelope_intervals);
    d.pois_mean = std::tgamma(d.gamma - alpha / p) * ibgm_cstar(w_params) *
                  r.total_mass() / factorial(d.gamma - 1);

    // (e^{alpha lambda t} - 1)/alpha, with the alpha = 0 limit lambda t.
    d.add_component(spec.ts, alpha, ratio_powm1(lambda * t, alpha), d.decay,
                    options);
    double b0 = 0.0;
    if (alpha >= 1.0) {
      b0 = d.pois_mean * (r.moment(1) / r.total_mass()) *
           ibgm_moment(w_params, 1.0);
    }
    d.drift_terms.push_back(b0);
    for (int n = 1; n <= d.gamma - 1; ++n) {
      const double mass = kappa_scaling(lambda, t, n, alpha, p);
      d.add_component(spec.ts, alpha - n * p, mass, d.decay, options);
      double bn = 0.0;
      if (alpha >= 1.0 && alpha < 1.0 + n * p) {
        bn = d.decay * mass * r.moment(1) *
             std::tgamma((1.0 - alpha + n * p) / p) / p;
      }
      d.drift_terms.push_back(bn);
    }
  } else {
    // alpha < 0: the driving process is compound Poisson, no residual terms.
    d.eta = std::exp(lambda * t);
    d.dgga.emplace(-alpha, p, d.eta);
    d.pois_mean =
        lambda * t * std::tgamma(-alpha / p) / p * r.total_mass();
  }

  for (double b : d.drift_terms) d.drift_total += b;
  return result;
}

double TransitionDecomposition::sample(RandomStream& s, double y) const {
  return impl_->sample(s, y);
}
double TransitionDecomposition::decay() const { return impl_->decay; }
double TransitionDecomposition::poisson_mean() const { return impl_->pois_mean; }
double TransitionDecomposition::drift_correction() const {
  return impl_->drift_total;
}
const std::vector<double>& TransitionDecomposition::drift_terms() const {
  return impl_->drift_terms;
}
int TransitionDecomposition::gamma_conv() const { return impl_->gamma; }
double TransitionDecomposition::eta() const { return impl_->eta; }
const std::vector<double>& TransitionDecomposition::component_masses() const {
  return impl_->comp_masses;
}

double sample_transition(RandomStream& s, const TransitionDecomposition& d,
                         double y) {
  return d.sample(s, y);
}

double transition_cumulant(const OUSpec& spec, int k, double y, double t) {
  require(k >= 1, "transition_cumulant: k must be >= 1");
  require(t > 0.0, "transition_cumulant: t must be > 0");
  const double alpha = spec.ts.alpha;
  const double p = spec.ts.p;
  const double decay_k = std::exp(-static_cast<double>(k) * spec.lambda_ * t);
  double value = 0.0;
  if (k == 1) {
    value += y * std::exp(-spec.lambda_ * t) + (1.0 - decay_k) * spec.ts.b;
    if (alpha >= 1.0) return value;  // the stable-like term drops out
  }
  double cum = std::tgamma((k - alpha) / p) / p * spec.ts.r.moment(k);
  if (spec.kind == OUKind::OUTS) cum /= k;
  return value + (1.0 - decay_k) * cum;
}

std::complex<double> transition_cf(const OUSpec& spec, double y, double t,
                                   double z) {
  if (spec.kind != OUKind::OUTS) {
    throw config_error("transition_cf: only the OUTS transition law has a "
                       "quadrature characteristic function here");
  }
  const double alpha = spec.ts.alpha;
  const double p = spec.ts.p;
  const double lambda = spec.lambda_;
  const RosinskiMeasure& r = spec.ts.r;
  const double decay = std::exp(-lambda * t);
  const std::complex<double> i(0.0, 1.0);

  std::complex<double> exponent =
      i * z * (decay * y + -std::expm1(-lambda * t) * spec.ts.b);

  const double upper = std::pow(709.0, 1.0 / p);
  if (alpha >= 0.0) {
    const int gamma = spec.ts.gamma_convention();
    const double eta = std::exp(lambda * t);
    const IBGMParams w_params(alpha, gamma, p, eta);
    const double pois = std::tgamma(gamma - alpha / p) * ibgm_cstar(w_params) *
                        r.total_mass() / factorial(gamma - 1);

    // residual components, all damped by e^{-lambda t}
    const double mass0 = ratio_powm1(lambda * t, alpha);
    exponent += ts_char_exponent(TSParams(alpha, p, r.scaled(mass0), 0.0),
                                 decay * z);
    for (int n = 1; n <= gamma - 1; ++n) {
      const double mass = kappa_scaling(lambda, t, n, alpha, p);
      exponent += ts_char_exponent(
          TSParams(alpha - n * p, p, r.scaled(mass), 0.0), decay * z);
    }

    // drift corrections
    double drift = 0.0;
    if (alpha >= 1.0) {
      drift += pois * (r.moment(1) / r.total_mass()) * ibgm_moment(w_params, 1.0);
      for (int n = 1; n <= gamma - 1; ++n) {
        if (alpha < 1.0 + n * p) {
          drift += decay * kappa_scaling(lambda, t, n, alpha, p) * r.moment(1) *
                   std::tgamma((1.0 - alpha + n * p) / p) / p;
        }
      }
    }
    exponent -= i * z * drift;

    // compound-Poisson part: pois * (E[e^{i z x W}] - 1), W ~ IBGM
    for (const auto& atom : r.atoms()) {
      const double w = z * atom.location;
      auto integrand = [&](double v) -> std::complex<double> {
        return (std::exp(i * w * v) - 1.0) * ibgm_pdf(w_params, v);
      };
      std::complex<double> cf = quad::integrate_complex(integrand, 0.0, 1.0);
      cf += quad::integrate_complex_osc(integrand, 1.0, upper);
      exponent += pois * (atom.weight / r.total_mass()) * cf;
    }
  } else {
    const double eta = std::exp(lambda * t);
    const DGGaParams w_params(-alpha, p, eta);
    const double pois = lambda * t * std::tgamma(-alpha / p) / p * r.total_mass();
    for (const auto& atom : r.atoms()) {
      const double w = z * atom.location;
      auto integrand = [&](double v) -> std::complex<double> {
        return (std::exp(i * w * v) - 1.0) * dgga_pdf(w_params, v);
      };
      std::complex<double> cf = quad::integrate_complex(integrand, 0.0, 1.0);
      cf += quad::integrate_complex_osc(integrand, 1.0, upper * eta);
      exponent += pois * (atom.weight / r.total_mass()) * cf;
    }
  }
  return std::exp(exponent);
}

TrajectoryGrid::TrajectoryGrid(double t_step_in, int n_steps_in, int n_paths_in,
                               double y0_in)
    : t_step(t_step_in), n_steps(n_steps_in), n_paths(n_paths_in), y0(y0_in) {
  require(t_step > 0.0 && std::isfinite(t_step),
          "TrajectoryGrid: t_step must be > 0");
  require(n_steps >= 1, "TrajectoryGrid: n_steps must be >= 1");
  require(n_paths >= 1, "TrajectoryGrid: n_paths must be >= 1");
  require(std::isfinite(y0), "TrajectoryGrid: y0 must be finite");
}

std::vector<double> PathMatrix::times() const {
  std::vector<double> t(static_cast<std::size_t>(n_steps) + 1);
  for (int k = 0; k <= n_steps; ++k) t[static_cast<std::size_t>(k)] = k * t_step;
  return t;
}

PathMatrix simulate_paths(RandomStream& s, const OUSpec& spec,
                          const TrajectoryGrid& grid,
                          const OUSamplerOptions& options) {
  const auto decomposition =
      TransitionDecomposition::build(spec, grid.t_step, options);
  PathMatrix out;
  out.n_paths = grid.n_paths;
  out.n_steps = grid.n_steps;
  out.t_step = grid.t_step;
  out.values.resize(static_cast<std::size_t>(grid.n_paths) *
                    (grid.n_steps + 1));
  for (int path = 0; path < grid.n_paths; ++path) {
    RandomStream stream = s.substream(static_cast<std::uint64_t>(path));
    double y = grid.y0;
    const std::size_t row =
        static_cast<std::size_t>(path) * (grid.n_steps + 1);
    out.values[row] = y;
    for (int step = 1; step <= grid.n_steps; ++step) {
      y = decomposition.sample(stream, y);
      out.values[row + static_cast<std::size_t>(step)] = y;
    }
  }
  return out;
}

}  // namespace tsou
