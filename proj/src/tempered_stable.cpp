#include "tsou/tempered_stable.hpp"

#include <algorithm>
#include <cmath>

#include "tsou/ggsm.hpp"
#include "tsou/numeric.hpp"
#include "tsou/quadrature.hpp"
#include "tsou/special.hpp"

namespace tsou {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One-sided stable variate with Laplace transform e^{-s^alpha},
// alpha in (0,1); Kanter's representation.
double stable_standard(RandomStream& s, double alpha) {
  const double u = s.next_uniform();
  const double e = s.next_exponential();
  const double log_a =
      std::log(std::sin((1.0 - alpha) * kPi * u)) +
      alpha / (1.0 - alpha) * std::log(std::sin(alpha * kPi * u)) -
      1.0 / (1.0 - alpha) * std::log(std::sin(kPi * u));
  return std::exp((1.0 - alpha) / alpha * (log_a - std::log(e)));
}

// t beyond which e^{-t^p} is below the double underflow threshold.
double radial_upper_limit(double p) { return std::pow(709.0, 1.0 / p); }

}  // namespace

RosinskiMeasure::RosinskiMeasure(std::vector<RosinskiAtom> atoms)
    : atoms_(std::move(atoms)) {
  require(!atoms_.empty(), "RosinskiMeasure: at least one atom required");
  for (const auto& atom : atoms_) {
    require(atom.location != 0.0 && std::isfinite(atom.location),
            "RosinskiMeasure: atom locations must be finite and nonzero");
    require(atom.weight > 0.0 && std::isfinite(atom.weight),
            "RosinskiMeasure: atom weights must be positive");
  }
  cum_weights_.reserve(atoms_.size());
  for (const auto& atom : atoms_) {
    total_mass_ += atom.weight;
    cum_weights_.push_back(total_mass_);
  }
}

double RosinskiMeasure::moment(int k) const {
  double sum = 0.0;
  for (const auto& atom : atoms_) {
    sum += atom.weight * std::pow(atom.location, k);
  }
  return sum;
}

RosinskiMeasure RosinskiMeasure::scaled(double factor) const {
  require(factor > 0.0, "RosinskiMeasure::scaled: factor must be positive");
  auto scaled_atoms = atoms_;
  for (auto& atom : scaled_atoms) atom.weight *= factor;
  return RosinskiMeasure(std::move(scaled_atoms));
}

std::size_t RosinskiMeasure::sample_atom(RandomStream& s) const {
  if (atoms_.size() == 1) return 0;
  const double u = s.next_uniform() * total_mass_;
  const auto it = std::lower_bound(cum_weights_.begin(), cum_weights_.end(), u);
  return static_cast<std::size_t>(std::distance(cum_weights_.begin(), it));
}

RosinskiMeasure rdts_measure(double c, double beta_temper, double alpha) {
  require(c > 0.0, "rdts_measure: c must be positive");
  require(beta_temper > 0.0, "rdts_measure: tempering rate must be positive");
  return RosinskiMeasure(
      {{1.0 / beta_temper, c * std::pow(beta_temper, alpha)}});
}

RosinskiMeasure bilateral_measure(double c_minus, double beta_minus,
                                  double c_plus, double beta_plus,
                                  double alpha) {
  return RosinskiMeasure(
      {{-1.0 / beta_minus, c_minus * std::pow(beta_minus, alpha)},
       {1.0 / beta_plus, c_plus * std::pow(beta_plus, alpha)}});
}

TSParams::TSParams(double alpha_in, double p_in, RosinskiMeasure r_in,
                   double b_in)
    : alpha(alpha_in), p(p_in), r(std::move(r_in)), b(b_in) {
  require(alpha < 2.0 && std::isfinite(alpha), "TSParams: alpha must be < 2");
  require(p > 0.0 && std::isfinite(p), "TSParams: p must be > 0");
  require(std::isfinite(b), "TSParams: shift must be finite");
}

int TSParams::gamma_convention() const {
  if (alpha > 0.0 && alpha < 2.0) {
    return 1 + static_cast<int>(std::floor(alpha / p));
  }
  return 1;
}

double ts_cumulant(const TSParams& params, int k) {
  require(k >= 1, "ts_cumulant: k must be >= 1");
  if (k == 1 && params.alpha >= 1.0) {
    return params.b;
  }
  const double shift = k == 1 ? params.b : 0.0;
  return std::tgamma((k - params.alpha) / params.p) / params.p *
             params.r.moment(k) +
         shift;
}

std::complex<double> ts_char_exponent(const TSParams& params, double z) {
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> total = i * params.b * z;
  const bool compensate = params.alpha >= 1.0;
  const double upper = radial_upper_limit(params.p);
  for (const auto& atom : params.r.atoms()) {
    const double w = atom.location * z;
    auto integrand = [&](double t) -> std::complex<double> {
      std::complex<double> psi = std::exp(i * w * t) - 1.0;
      if (compensate) psi -= i * w * t;
      return psi * std::pow(t, -1.0 - params.alpha) * std::exp(-std::pow(t, params.p));
    };
    std::complex<double> j = quad::integrate_complex(integrand, 0.0, 1.0);
    j += quad::integrate_complex_osc(integrand, 1.0, upper);
    total += atom.weight * j;
  }
  return total;
}

double levy_radial_tail(double alpha, double p, double x) {
  require(x > 0.0, "levy_radial_tail: x must be positive");
  return upper_gamma(-alpha / p, std::pow(x, p)) / p;
}

double levy_radial_mean_below(double alpha, double p, double x) {
  require(alpha < 1.0, "levy_radial_mean_below: needs alpha < 1");
  const double a = (1.0 - alpha) / p;
  return std::tgamma(a) * reg_lower_gamma(a, std::pow(x, p)) / p;
}

double levy_radial_mean_total(double alpha, double p) {
  require(alpha < 1.0, "levy_radial_mean_total: needs alpha < 1");
  return std::tgamma((1.0 - alpha) / p) / p;
}

double sample_ts_cp(RandomStream& s, const TSParams& params) {
  if (!(params.alpha < 0.0)) {
    throw config_error("sample_ts_cp: requires alpha < 0");
  }
  const double jump_mean =
      params.r.total_mass() * std::tgamma(-params.alpha / params.p) / params.p;
  const long long n = draw_poisson(s, jump_mean);
  double value = params.b;
  const GGaParams jump_law(-params.alpha, params.p, 1.0);
  for (long long j = 0; j < n; ++j) {
    const auto idx = params.r.sample_atom(s);
    value += params.r.atoms()[idx].location * sample_gga(s, jump_law);
  }
  return value;
}

double sample_ts_cts(RandomStream& s, const TSParams& params) {
  if (!(params.p == 1.0 && params.alpha > 0.0 && params.alpha < 1.0)) {
    throw config_error("sample_ts_cts: requires p = 1 and alpha in (0,1)");
  }
  const double alpha = params.alpha;
  double value = params.b;
  for (const auto& atom : params.r.atoms()) {
    const double x_abs = std::abs(atom.location);
    const double delta = atom.weight * std::pow(x_abs, alpha);
    const double theta = 1.0 / x_abs;
    const double sigma =
        std::pow(delta * std::tgamma(1.0 - alpha) / alpha, 1.0 / alpha);
    double jump = 0.0;
    bool accepted = false;
    for (long long iter = 0; iter < kMaxRejectionIters; ++iter) {
      const double proposal = sigma * stable_standard(s, alpha);
      if (s.next_uniform() <= std::exp(-theta * proposal)) {
        jump = proposal;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw config_error(
          "sample_ts_cts: tilting acceptance too low for these parameters");
    }
    value += (atom.location >= 0.0 ? 1.0 : -1.0) * jump;
  }
  return value;
}

// Inversion table for the normalized jump tail above the cutoff: uniform
// grid in log U with monotone cubic Hermite segments in log x (exact
// endpoint slopes dlog x/dlog U = U/(x U')), then a Newton polish on the
// local cubic to 1e-12.
struct SeriesSampler::Impl {
  TSParams params;
  double eps = 0.0;
  double tail_at_eps = 0.0;
  double expected_jumps = 0.0;
  double compensation = 0.0;

  static constexpr int kNodes = 512;
  double log_u_hi = 0.0;   // log U at the cutoff (largest tail value)
  double step = 0.0;       // spacing in log U (negative direction handled below)
  std::vector<double> log_x;
  std::vector<double> slope;  // dlog x / dlog U at the nodes

  Impl(const TSParams& params_in, Options options) : params(params_in) {
    if (!(params.alpha >= 0.0 && params.alpha < 1.0)) {
      throw config_error("SeriesSampler: requires alpha in [0,1)");
    }
    require(options.tail_tol > 0.0 && options.tail_tol < 1.0,
            "SeriesSampler: tail_tol must be in (0,1)");
    const double a = (1.0 - params.alpha) / params.p;
    eps = std::pow(reg_lower_gamma_inv(a, options.tail_tol), 1.0 / params.p);
    tail_at_eps = levy_radial_tail(params.alpha, params.p, eps);
    expected_jumps = params.r.total_mass() * tail_at_eps;
    if (expected_jumps > options.max_expected_jumps) {
      throw config_error(
          "SeriesSampler: requested tail tolerance needs more than the "
          "configured jump budget; raise tail_tol or the budget");
    }
    const double mean_below =
        levy_radial_mean_below(params.alpha, params.p, eps);
    for (const auto& atom : params.r.atoms()) {
      compensation += atom.location * atom.weight * mean_below;
    }
    build_table();
  }

  double tail(double x) const {
    return levy_radial_tail(params.alpha, params.p, x);
  }

  double tail_derivative(double x) const {
    return -std::pow(x, -1.0 - params.alpha) * std::exp(-std::pow(x, params.p));
  }

  void build_table() {
    log_u_hi = std::log(tail_at_eps);
    const double target_lo = tail_at_eps * 1e-12;
    // bracket x_hi where the tail falls to 1e-12 of its cutoff value
    double hi = std::max(2.0 * eps, 1.0);
    while (tail(hi) > target_lo) hi *= 2.0;
    const double log_u_lo = std::log(target_lo);
    step = (log_u_lo - log_u_hi) / (kNodes - 1);
    log_x.resize(kNodes);
    slope.resize(kNodes);
    for (int j = 0; j < kNodes; ++j) {
      const double u_target = std::exp(log_u_hi + step * j);
      double x;
      if (j == 0) {
        x = eps;
      } else {
        // bisection seeded from the previous node
        double blo = std::exp(log_x[static_cast<std::size_t>(j) - 1]);
        double bhi = hi;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (blo + bhi);
          if (tail(mid) > u_target) {
            blo = mid;
          } else {
            bhi = mid;
          }
          if ((bhi - blo) <= 1e-14 * bhi) break;
        }
        x = 0.5 * (blo + bhi);
        // Newton with the exact tail to pin the node
        for (int it = 0; it < 50; ++it) {
          const double f = tail(x) - u_target;
          const double d = tail_derivative(x);
          const double nx = x - f / d;
          if (!(nx > blo && nx < bhi)) break;
          if (std::abs(nx - x) <= 1e-15 * x) {
            x = nx;
            break;
          }
          x = nx;
        }
      }
      log_x[static_cast<std::size_t>(j)] = std::log(x);
      slope[static_cast<std::size_t>(j)] =
          u_target / (x * tail_derivative(x));  // dlog x/dlog U
    }
  }

  // x with tail(x) = u, u in (0, tail_at_eps].
  double invert_tail(double u) const {
    const double w = std::log(u);
    double t = (w - log_u_hi) / step;
    if (t <= 0.0) return eps;
    if (t >= kNodes - 1) return std::exp(log_x.back());
    const int j = static_cast<int>(t);
    t -= j;
    const double y0 = log_x[static_cast<std::size_t>(j)];
    const double y1 = log_x[static_cast<std::size_t>(j) + 1];
    const double d0 = slope[static_cast<std::size_t>(j)] * step;
    const double d1 = slope[static_cast<std::size_t>(j) + 1] * step;
    // cubic Hermite in t on [0,1]
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    const double lx = h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1;
    return std::exp(lx);
  }

  double draw(RandomStream& s) const {
    double value = params.b + compensation;
    for (const auto& atom : params.r.atoms()) {
      const long long n = draw_poisson(s, atom.weight * tail_at_eps);
      double jump_sum = 0.0;
      for (long long j = 0; j < n; ++j) {
        jump_sum += invert_tail(s.next_uniform() * tail_at_eps);
      }
      value += atom.location * jump_sum;
    }
    return value;
  }
};

SeriesSampler::SeriesSampler(const TSParams& params, Options options)
    : impl_(std::make_unique<Impl>(params, options)) {}
SeriesSampler::~SeriesSampler() = default;
SeriesSampler::SeriesSampler(SeriesSampler&&) noexcept = default;
SeriesSampler& SeriesSampler::operator=(SeriesSampler&&) noexcept = default;

double SeriesSampler::draw(RandomStream& s) const { return impl_->draw(s); }
double SeriesSampler::cutoff() const { return impl_->eps; }
double SeriesSampler::expected_jumps() const { return impl_->expected_jumps; }
double SeriesSampler::compensation() const { return impl_->compensation; }

double sample_ts_series(RandomStream& s, const TSParams& params,
                        double tail_tol) {
  SeriesSampler sampler(params, {tail_tol, 1e6});
  return sampler.draw(s);
}

struct TempStableSampler::Impl {
  TSParams params;
  enum class Mode { CompoundPoisson, Exact, Series } mode;
  std::unique_ptr<SeriesSampler> series;

  Impl(const TSParams& params_in, SeriesSampler::Options options)
      : params(params_in), mode(Mode::Series) {
    if (params.alpha < 0.0) {
      mode = Mode::CompoundPoisson;
    } else if (params.alpha >= 1.0) {
      throw config_error(
          "TempStableSampler: alpha in [1,2) is outside the supported "
          "sampling range (cumulant and characteristic-function oracles "
          "remain available)");
    } else if (params.p == 1.0 && params.alpha > 0.0) {
      mode = Mode::Exact;
    } else {
      series = std::make_unique<SeriesSampler>(params, options);
    }
  }

  double draw(RandomStream& s) const {
    switch (mode) {
      case Mode::CompoundPoisson:
        return sample_ts_cp(s, params);
      case Mode::Exact:
        return sample_ts_cts(s, params);
      case Mode::Series:
        return series->draw(s);
    }
    throw config_error("TempStableSampler: unreachable mode");
  }
};

TempStableSampler::TempStableSampler(const TSParams& params,
                                     SeriesSampler::Options options)
    : impl_(std::make_unique<Impl>(params, options)) {}
TempStableSampler::~TempStableSampler() = default;
TempStableSampler::TempStableSampler(TempStableSampler&&) noexcept = default;
TempStableSampler& TempStableSampler::operator=(TempStableSampler&&) noexcept =
    default;

double TempStableSampler::draw(RandomStream& s) const { return impl_->draw(s); }

}  // namespace tsou
