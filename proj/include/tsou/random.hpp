#ifndef TSOU_RANDOM_HPP
#define TSOU_RANDOM_HPP

#include <array>
#include <cstdint>

namespace tsou {

// Deterministic uniform source with O(1) substream derivation.
//
// The generator is xoshiro256++ seeded through SplitMix64.  A stream keeps
// the 64-bit key it was derived from, so substream(i) is a pure function of
// (key, i): derived streams are reproducible regardless of how much the
// parent has been consumed.
//
// A stream is single-owner: no concurrent draws on one stream.  Parallelism
// is obtained by deriving one substream per task.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  // Strictly inside (0,1); exact 0 is rejected so downstream logs and
  // rejection ratios never see an endpoint.
  double next_uniform();

  double next_exponential();  // rate 1
  double next_normal();       // standard normal, Marsaglia polar method

  // Child stream determined by (key, index) only.
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Gamma variate with the given shape and rate (mean shape/rate).
// Marsaglia-Tsang for shape >= 1, power-boost reduction below 1.
double draw_gamma(RandomStream& s, double shape, double rate);

// Poisson variate; Knuth's product method below mean 10, Hormann's PTRS
// transformed rejection above.
long long draw_poisson(RandomStream& s, double mean);

}  // namespace tsou

#endif  // TSOU_RANDOM_HPP
