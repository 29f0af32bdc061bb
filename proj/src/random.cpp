#include "tsou/random.hpp"

#include <cmath>
#include <limits>

#include "tsou/numeric.hpp"

namespace tsou {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += kGolden;
  return mix64(state);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) {
    word = splitmix_next(sm);
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = kGolden;
  }
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::next_uniform() {
  double u;
  do {
    u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  } while (u == 0.0);
  return u;
}

double RandomStream::next_exponential() { return -std::log(next_uniform()); }

double RandomStream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double x1, x2, r2;
  do {
    x1 = 2.0 * next_uniform() - 1.0;
    x2 = 2.0 * next_uniform() - 1.0;
    r2 = x1 * x1 + x2 * x2;
  } while (r2 >= 1.0 || r2 == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(r2) / r2);
  cached_normal_ = x2 * factor;
  has_cached_normal_ = true;
  return x1 * factor;
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  const std::uint64_t child_key =
      mix64(mix64(key_ + kGolden) ^ (index + 1) * 0xD1B54A32D192ED03ULL);
  return RandomStream(child_key);
}

double draw_gamma(RandomStream& s, double shape, double rate) {
  require(shape > 0.0 && std::isfinite(shape), "draw_gamma: shape must be > 0");
  require(rate > 0.0 && std::isfinite(rate), "draw_gamma: rate must be > 0");

  // Marsaglia & Tsang (2000), shape >= 1; the squeeze accepts most draws
  // without logarithms.
  const bool boosted = shape < 1.0;
  const double a = boosted ? shape + 1.0 : shape;
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  double value;
  while (true) {
    double x, v;
    do {
      x = s.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = s.next_uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 ||
        std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      value = d * v;
      break;
    }
  }
  if (boosted) {
    value *= std::pow(s.next_uniform(), 1.0 / shape);
  }
  return value / rate;
}

long long draw_poisson(RandomStream& s, double mean) {
  require(mean >= 0.0 && std::isfinite(mean),
          "draw_poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;

  if (mean < 10.0) {
    // Knuth product method.
    const double limit = std::exp(-mean);
    long long k = 0;
    double prod = s.next_uniform();
    while (prod > limit) {
      ++k;
      prod *= s.next_uniform();
    }
    return k;
  }

  // Hormann (1993) PTRS transformed rejection.
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = s.next_uniform() - 0.5;
    const double v = s.next_uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<long long>(kf);
    }
    if (kf < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -mean + kf * log_mean - std::lgamma(kf + 1.0);
    if (lhs <= rhs) {
      return static_cast<long long>(kf);
    }
  }
}

}  // namespace tsou
