#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace evlab {

/// Seedable generator with derivable per-replica streams.
///
/// Replica r of a run seeded with master seed s draws from
/// Rng::for_replica(s, r); streams depend only on (s, r), never on scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(mix(seed)), seed_(seed) {}

  static Rng for_replica(std::uint64_t master_seed, std::uint64_t replica) {
    return Rng(mix(master_seed ^ mix(replica + 0x632be59bd9b4e019ULL)));
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., n-1}.
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  std::uint64_t seed() const { return seed_; }

  /// SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace evlab
