#include "tsou/iga.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "tsou/numeric.hpp"
#include "tsou/quadrature.hpp"
#include "tsou/special.hpp"

namespace tsou {

namespace {

constexpr int kMaxIntegerGamma = 30;  // alternating sums lose >9 digits past this
constexpr int kMaxInversionIters = 200;
constexpr double kInversionTol = 1e-12;  // on the cdf scale

// Everything below works on the p = 1 scale (beta1 = beta/p, same gamma and
// eta); a draw from m_{beta,gamma,p,eta} is a base draw to the power 1/p.

// Coefficients of the binomial expansion of m_{beta1,gamma,1,eta}:
//   m(theta) K* = sum_k binom(gamma-1,k) (-1)^k theta^{beta1-k-1}.
struct MixExpansion {
  double beta1 = 0.0;
  double eta = 0.0;
  double log_eta = 0.0;
  int gamma = 1;
  std::vector<double> coef;  // binom(gamma-1,k) (-1)^k
  double kstar = 0.0;        // alternating-sum normalizer

  static MixExpansion build(double beta1, int gamma, double eta) {
    if (gamma > kMaxIntegerGamma) {
      throw config_error(
          "integer-gamma expansion limited to gamma <= 30; the alternating "
          "binomial sum is unstable past that");
    }
    MixExpansion t;
    t.beta1 = beta1;
    t.eta = eta;
    t.log_eta = std::log(eta);
    t.gamma = gamma;
    t.coef = binomial_row(gamma - 1);
    for (std::size_t k = 1; k < t.coef.size(); k += 2) t.coef[k] = -t.coef[k];
    KahanSum sum;
    for (std::size_t k = 0; k < t.coef.size(); ++k) {
      sum.add(t.coef[k] *
              ratio_powm1(t.log_eta, beta1 - static_cast<double>(k)));
    }
    t.kstar = sum.value();
    return t;
  }

  // Unnormalized cdf integrand sum_k c_k (y^{beta1-k} - 1)/(beta1-k).
  double cdf_raw(double y) const {
    const double log_y = std::log(y);
    KahanSum sum;
    for (std::size_t k = 0; k < coef.size(); ++k) {
      sum.add(coef[k] * ratio_powm1(log_y, beta1 - static_cast<double>(k)));
    }
    return sum.value();
  }

  double cdf(double y) const {
    if (y <= 1.0) return 0.0;
    if (y >= eta) return 1.0;
    return std::min(1.0, std::max(0.0, cdf_raw(y) / kstar));
  }

  // Product form (theta-1)^{gamma-1} theta^{beta1-gamma} / K*; no
  // cancellation, used by the Newton refinement.
  double pdf(double theta) const {
    if (theta <= 1.0 || theta >= eta) return 0.0;
    return std::pow(theta - 1.0, gamma - 1.0) *
           std::pow(theta, beta1 - gamma) / kstar;
  }
};

double m0_draw(RandomStream& s, double beta1, double eta) {
  return m0_inverse_cdf(beta1, eta, s.next_uniform());
}

// Bracketed bisection refined by Newton; the initial guess is the gamma = 1
// variate at the same uniform, which already lands near the root.
double m2_invert(const MixExpansion& table, double u) {
  double lo = 1.0, hi = table.eta;
  double y = m0_inverse_cdf(table.beta1, table.eta, u);
  if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
  for (int iter = 0; iter < kMaxInversionIters; ++iter) {
    const double f = table.cdf_raw(y) / table.kstar - u;
    if (std::abs(f) <= kInversionTol) return y;
    if (f > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    const double d = table.pdf(y);
    double next = d > 0.0 ? y - f / d : 0.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y) return y;
    y = next;
  }
  throw numeric_error("m2_invert: cdf inversion did not converge");
}

// Positive-term envelope of the binomial expansion (Bignami-de Matteis
// style): even-k terms only, a mixture of power densities.
struct BdEnvelope {
  std::vector<double> cum_pmf;    // cumulative pmf over even k
  std::vector<double> delta;     // ell exponent beta1 - 2k - 1
  std::vector<double> even_coef;  // binom(gamma-1, 2k)
  double v2star = 0.0;            // sum H*_{2k} / K*

  static BdEnvelope build(const MixExpansion& table) {
    BdEnvelope env;
    const auto binom = binomial_row(table.gamma - 1);
    double total = 0.0;
    std::vector<double> masses;
    for (int k = 0; 2 * k <= table.gamma - 1; ++k) {
      const double h = binom[static_cast<std::size_t>(2 * k)] *
                       ratio_powm1(table.log_eta, table.beta1 - 2.0 * k);
      masses.push_back(h);
      env.delta.push_back(table.beta1 - 2.0 * k - 1.0);
      env.even_coef.push_back(binom[static_cast<std::size_t>(2 * k)]);
      total += h;
    }
    double running = 0.0;
    for (double m : masses) {
      running += m / total;
      env.cum_pmf.push_back(running);
    }
    env.cum_pmf.back() = 1.0;
    env.v2star = total / table.kstar;
    return env;
  }

  double draw(RandomStream& s, const MixExpansion& table) const {
    const double u = s.next_uniform();
    std::size_t idx = 0;
    while (idx + 1 < cum_pmf.size() && u > cum_pmf[idx]) ++idx;
    return sample_ell(s, EllParams(delta[idx], table.eta));
  }

  // phi2*(y) = (y-1)^{gamma-1} y^{1-gamma} / sum_k binom(gamma-1,2k) y^{-2k}.
  double accept_ratio(double y, int gamma) const {
    double denom = 0.0;
    double ypow = 1.0;
    const double inv_y2 = 1.0 / (y * y);
    for (double c : even_coef) {
      denom += c * ypow;
      ypow *= inv_y2;
    }
    return std::pow((y - 1.0) / y, gamma - 1.0) / denom;
  }
};

double m1_draw(RandomStream& s, double beta1, double gamma, double eta,
               AcceptanceCounter* counter) {
  const EllParams proposal(beta1 - gamma, eta);
  const double inv_span = 1.0 / (eta - 1.0);
  for (long long iter = 0; iter < kMaxRejectionIters; ++iter) {
    const double u = s.next_uniform();
    const double y = sample_ell(s, proposal);
    if (counter) ++counter->proposals;
    if (u <= std::pow((y - 1.0) * inv_span, gamma - 1.0)) {
      if (counter) ++counter->accepted;
      return y;
    }
  }
  throw config_error("m1_draw: iteration cap reached");
}

double m3_draw(RandomStream& s, const MixExpansion& table,
               const BdEnvelope& env, AcceptanceCounter* counter) {
  for (long long iter = 0; iter < kMaxRejectionIters; ++iter) {
    const double u = s.next_uniform();
    const double y = env.draw(s, table);
    if (counter) ++counter->proposals;
    if (u <= env.accept_ratio(y, table.gamma)) {
      if (counter) ++counter->accepted;
      return y;
    }
  }
  throw config_error("m3_draw: iteration cap reached");
}

}  // namespace

IGaParams::IGaParams(double beta_in, double gamma_in, double p_in,
                     double eta_in)
    : beta(beta_in), gamma_(gamma_in), p(p_in), eta(eta_in) {
  require(std::isfinite(beta), "IGaParams: beta must be finite");
  require(gamma_ > 0.0 && std::isfinite(gamma_), "IGaParams: gamma must be > 0");
  require(p > 0.0 && std::isfinite(p), "IGaParams: p must be > 0");
  require(eta > 1.0 && std::isfinite(eta), "IGaParams: eta must be > 1");
  require(beta < p * gamma_, "IGaParams: beta must be < p*gamma");
}

bool IGaParams::integer_gamma() const { return is_integer(gamma_); }

int IGaParams::gamma_int() const {
  if (!integer_gamma()) {
    throw config_error("IGaParams: this operation requires integer gamma");
  }
  return static_cast<int>(std::lround(gamma_));
}

double iga_kstar(const IGaParams& params) {
  const double a = params.beta / params.p;
  return quad::integrate(
      [&](double x) {
        return std::pow(1.0 - x, params.gamma_ - 1.0) * std::pow(x, -a - 1.0);
      },
      1.0 / params.eta, 1.0);
}

double iga_kstar_sum(const IGaParams& params) {
  return MixExpansion::build(params.beta / params.p, params.gamma_int(),
                             params.eta)
      .kstar;
}

std::vector<double> iga_hstar_terms(const IGaParams& params) {
  const int gamma = params.gamma_int();
  const double beta1 = params.beta / params.p;
  const double log_eta = std::log(params.eta);
  const auto binom = binomial_row(gamma - 1);
  std::vector<double> h(binom.size());
  for (std::size_t k = 0; k < binom.size(); ++k) {
    h[k] = binom[k] * ratio_powm1(log_eta, beta1 - static_cast<double>(k));
  }
  return h;
}

double iga_k(const IGaParams& params) {
  return std::exp(std::lgamma(params.gamma_ - params.beta / params.p) -
                  std::lgamma(params.gamma_)) /
         params.p * iga_kstar(params);
}

double iga_pdf(const IGaParams& params, double u) {
  if (u <= 0.0) {
    throw std::domain_error("iga_pdf: u must be positive");
  }
  const double up = std::pow(u, params.p);
  const double g = reg_lower_gamma(params.gamma_, up * (params.eta - 1.0));
  return g * std::exp(-up) * std::pow(u, -1.0 - params.beta) / iga_k(params);
}

double iga_moment(const IGaParams& params, double xi) {
  require(xi > params.beta - params.p * params.gamma_,
          "iga_moment: xi must exceed beta - p*gamma");
  if (xi == 0.0) return 1.0;
  const IGaParams shifted(params.beta - xi, params.gamma_, params.p, params.eta);
  return iga_k(shifted) / iga_k(params);
}

double iga_m_pdf(const IGaParams& params, double theta) {
  const double hi = std::pow(params.eta, 1.0 / params.p);
  if (theta <= 1.0 || theta >= hi) return 0.0;
  const double tp = std::pow(theta, params.p);
  return params.p * std::pow(tp - 1.0, params.gamma_ - 1.0) *
         std::pow(theta, params.p + params.beta - params.p * params.gamma_ - 1.0) /
         iga_kstar(params);
}

double iga_m_cdf(const IGaParams& params, double y) {
  const double hi = std::pow(params.eta, 1.0 / params.p);
  if (y <= 1.0 || y >= hi) {
    if (y == 1.0) return 0.0;
    if (y == hi) return 1.0;
    throw std::domain_error("iga_m_cdf: y outside (1, eta^{1/p})");
  }
  const auto table = MixExpansion::build(params.beta / params.p,
                                         params.gamma_int(), params.eta);
  return table.cdf(std::pow(y, params.p));
}

double m0_inverse_cdf(double beta, double eta, double u) {
  if (beta == 0.0) {
    return std::pow(eta, u);
  }
  return std::pow(u * std::expm1(beta * std::log(eta)) + 1.0, 1.0 / beta);
}

double iga_phi1(const IGaParams& params, double u) {
  if (u <= 0.0) {
    throw std::domain_error("iga_phi1: u must be positive");
  }
  if (u < 1e-60) return 1.0;  // limit as u -> 0+
  const double g = reg_lower_gamma(params.gamma_, (params.eta - 1.0) * u);
  if (g <= 0.0) return 0.0;
  const double log_phi = std::lgamma(params.gamma_ + 1.0) -
                         params.gamma_ * std::log(params.eta - 1.0) +
                         std::log(g) - params.gamma_ * std::log(u);
  return std::min(1.0, std::exp(log_phi));
}

IGaMethod iga_method_from_string(const std::string& name) {
  if (name == "args") return IGaMethod::ARGS;
  if (name == "inverse") return IGaMethod::Inverse;
  if (name == "arbd") return IGaMethod::ARBD;
  if (name == "arg") return IGaMethod::ARG;
  throw config_error("unknown IGa method: " + name);
}

std::string to_string(IGaMethod method) {
  switch (method) {
    case IGaMethod::ARGS: return "args";
    case IGaMethod::Inverse: return "inverse";
    case IGaMethod::ARBD: return "arbd";
    case IGaMethod::ARG: return "arg";
  }
  return "?";
}

IGaConstants make_iga_constants(const IGaParams& params) {
  IGaConstants c;
  c.kstar = iga_kstar(params);
  c.k = iga_k(params);
  c.v1 = std::pow(params.eta - 1.0, params.gamma_) / (params.gamma_ * c.kstar);
  const double beta1 = params.beta / params.p;
  if (params.gamma_ > 1.0) {
    c.v1star = std::pow(params.eta - 1.0, params.gamma_ - 1.0) *
               ratio_powm1(std::log(params.eta), beta1 - params.gamma_ + 1.0) /
               c.kstar;
  }
  if (params.integer_gamma() && params.gamma_int() <= kMaxIntegerGamma) {
    c.h_terms = iga_hstar_terms(params);
    const auto table =
        MixExpansion::build(beta1, params.gamma_int(), params.eta);
    if (params.gamma_int() >= 2) {
      c.v2star = BdEnvelope::build(table).v2star;
    }
  }
  return c;
}

struct IGaSampler::Impl {
  IGaParams params;
  IGaMethod method;
  double shape;  // gamma - beta/p, the Ga proposal shape
  double inv_p;
  double beta1;
  MixMethod mix = MixMethod::M0;
  std::optional<MixExpansion> table;
  std::optional<BdEnvelope> bd;
  // ARG path
  double arg_log_coef = 0.0;

  Impl(const IGaParams& params_in, IGaMethod method_in)
      : params(params_in),
        method(method_in),
        shape(params_in.gamma_ - params_in.beta / params_in.p),
        inv_p(1.0 / params_in.p),
        beta1(params_in.beta / params_in.p) {
    if (method == IGaMethod::ARG) {
      arg_log_coef = std::lgamma(params.gamma_ + 1.0) -
                     params.gamma_ * std::log(params.eta - 1.0);
      return;
    }
    const bool g1 = params.integer_gamma() && params.gamma_int() == 1;
    if (g1) {
      mix = MixMethod::M0;
      return;
    }
    switch (method) {
      case IGaMethod::ARGS:
        if (!(params.gamma_ > 1.0)) {
          throw config_error("ARGS requires gamma >= 1");
        }
        mix = MixMethod::M1;
        break;
      case IGaMethod::Inverse:
        table = MixExpansion::build(beta1, params.gamma_int(), params.eta);
        mix = MixMethod::M2;
        break;
      case IGaMethod::ARBD:
        table = MixExpansion::build(beta1, params.gamma_int(), params.eta);
        bd = BdEnvelope::build(*table);
        mix = MixMethod::M3;
        break;
      case IGaMethod::ARG:
        break;
    }
  }

  double draw_mix(RandomStream& s, AcceptanceCounter* counter) const {
    switch (mix) {
      case MixMethod::M0:
        return m0_draw(s, beta1, params.eta);
      case MixMethod::M1:
        return m1_draw(s, beta1, params.gamma_, params.eta, counter);
      case MixMethod::M2:
        return m2_invert(*table, s.next_uniform());
      case MixMethod::M3:
        return m3_draw(s, *table, *bd, counter);
      case MixMethod::BD:
        return bd->draw(s, *table);
    }
    throw config_error("IGaSampler: unreachable mix method");
  }

  double draw(RandomStream& s, AcceptanceCounter* counter) const {
    if (method == IGaMethod::ARG) {
      for (long long iter = 0; iter < kMaxRejectionIters; ++iter) {
        const double u = s.next_uniform();
        const double y = draw_gamma(s, shape, 1.0);
        if (counter) ++counter->proposals;
        double phi;
        if (y < 1e-60) {
          phi = 1.0;
        } else {
          const double g = reg_lower_gamma(params.gamma_, (params.eta - 1.0) * y);
          phi = g <= 0.0 ? 0.0
                         : std::exp(arg_log_coef + std::log(g) -
                                    params.gamma_ * std::log(y));
        }
        if (u <= phi) {
          if (counter) ++counter->accepted;
          return std::pow(y, inv_p);
        }
      }
      throw config_error("IGaSampler: ARG iteration cap reached");
    }
    const double y = draw_gamma(s, shape, 1.0);
    const double z = draw_mix(s, counter);
    return std::pow(y / z, inv_p);
  }
};

IGaSampler::IGaSampler(const IGaParams& params, IGaMethod method)
    : impl_(std::make_unique<Impl>(params, method)) {}
IGaSampler::~IGaSampler() = default;
IGaSampler::IGaSampler(IGaSampler&&) noexcept = default;
IGaSampler& IGaSampler::operator=(IGaSampler&&) noexcept = default;

double IGaSampler::draw(RandomStream& s, AcceptanceCounter* counter) const {
  return impl_->draw(s, counter);
}
const IGaParams& IGaSampler::params() const { return impl_->params; }
IGaMethod IGaSampler::method() const { return impl_->method; }

double sample_iga(RandomStream& s, const IGaParams& params, IGaMethod method) {
  return IGaSampler(params, method).draw(s);
}

double sample_m(RandomStream& s, const IGaParams& params, MixMethod method) {
  const double beta1 = params.beta / params.p;
  const double inv_p = 1.0 / params.p;
  switch (method) {
    case MixMethod::M0: {
      if (!(params.integer_gamma() && params.gamma_int() == 1)) {
        throw config_error("sample_m: M0 requires gamma = 1");
      }
      return std::pow(m0_draw(s, beta1, params.eta), inv_p);
    }
    case MixMethod::M1: {
      if (!(params.gamma_ > 1.0)) {
        throw config_error("sample_m: M1 requires gamma > 1");
      }
      return std::pow(m1_draw(s, beta1, params.gamma_, params.eta, nullptr),
                      inv_p);
    }
    case MixMethod::M2: {
      const int gamma = params.gamma_int();
      if (gamma == 1) {
        return std::pow(m0_draw(s, beta1, params.eta), inv_p);
      }
      const auto table = MixExpansion::build(beta1, gamma, params.eta);
      return std::pow(m2_invert(table, s.next_uniform()), inv_p);
    }
    case MixMethod::M3: {
      const int gamma = params.gamma_int();
      if (gamma < 2) {
        throw config_error("sample_m: M3 requires integer gamma >= 2");
      }
      const auto table = MixExpansion::build(beta1, gamma, params.eta);
      const auto env = BdEnvelope::build(table);
      return std::pow(m3_draw(s, table, env, nullptr), inv_p);
    }
    case MixMethod::BD: {
      const auto table =
          MixExpansion::build(beta1, params.gamma_int(), params.eta);
      const auto env = BdEnvelope::build(table);
      return std::pow(env.draw(s, table), inv_p);
    }
  }
  throw config_error("sample_m: unknown method");
}

MixingDensity iga_mixing_density(const IGaParams& params) {
  MixingDensity mix;
  mix.support_lo = 1.0;
  mix.support_hi = std::pow(params.eta, 1.0 / params.p);
  mix.pdf = [params](double theta) { return iga_m_pdf(params, theta); };
  const MixMethod method =
      params.integer_gamma() && params.gamma_int() == 1 ? MixMethod::M0
      : params.gamma_ > 1.0                             ? MixMethod::M1
                                                        : MixMethod::M2;
  mix.sample = [params, method](RandomStream& s) {
    return sample_m(s, params, method);
  };
  mix.rejection_v = make_iga_constants(params).v1;
  mix.phi = [params](double u) { return iga_phi1(params, u); };
  return mix;
}

}  // namespace tsou
