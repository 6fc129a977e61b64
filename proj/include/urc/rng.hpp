#pragma once

#include <cstdint>
#include <random>

namespace urc {

/// SplitMix64 finalizer: a bijective 64-bit mixer with good avalanche.
constexpr std::uint64_t mix_bits(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Deterministic key derivation: hashing (parent, label) yields a child key
/// that depends only on the path of labels from the seed, never on how many
/// values any stream has produced. Simulation code derives one key per
/// (mode, trial, purpose), which is what makes results independent of how
/// trials are distributed across threads.
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t label) {
  return mix_bits(parent ^ mix_bits(label + 0x9E3779B97F4A7C15ull));
}

/// Counter-based stream: output k is mix_bits(key + k * gamma), the
/// SplitMix64 sequence for this key. Construction is two integer ops, so a
/// fresh stream per trial and purpose is the normal usage. Satisfies
/// uniform_random_bit_generator for use with <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix_bits(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  /// Unit-mean exponential via inversion; the uniform argument lies in
  /// (0, 1] so the log never sees zero.
  double next_exponential() {
    return -std::log((static_cast<double>(operator()() >> 11) + 1.0) * 0x1.0p-53);
  }

 private:
  std::uint64_t state_;
};

/// Poisson count with the given mean, consuming bits from the stream.
inline long sample_poisson(RandomStream& stream, double mean) {
  std::poisson_distribution<long> dist(mean);
  return dist(stream);
}

}  // namespace urc
