#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace rdslab {

/// SplitMix64 finalizer; bijective 64-bit mix.
inline std::uint64_t mix_u64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// FNV-1a over the bytes of a string.
inline std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

/// A self-contained random stream. All draw primitives are implemented on
/// top of the raw 64-bit engine output so that results do not depend on
/// standard-library distribution internals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Unbiased: the 2^64 mod n lowest raw values
  /// are rejected so the remainder partitions evenly.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Index into `weights` drawn with probability proportional to weight.
  /// Weights must be nonnegative with a positive sum.
  std::size_t weighted_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("weighted_index: negative weight");
      total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("weighted_index: total weight must be positive");
    const double u = uniform01() * total;
    double cum = 0.0;
    std::size_t fallback = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      fallback = i;
      cum += weights[i];
      if (u < cum) return i;
    }
    return fallback;
  }

  /// Fisher-Yates shuffle (engine-order stable, unlike std::shuffle).
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Counter-keyed substream derivation: the stream for replication `r` of a
/// scenario depends only on (master_seed, key, r), never on execution order,
/// so permuting or parallelizing replications cannot change results.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::string_view key,
                                    std::uint64_t counter) {
  const std::uint64_t base = mix_u64(master_seed ^ hash_str(key));
  return mix_u64(base + 0x9E3779B97F4A7C15ull * (counter + 1));
}

inline RngStream substream(std::uint64_t master_seed, std::string_view key,
                           std::uint64_t counter) {
  return RngStream(substream_seed(master_seed, key, counter));
}

}  // namespace rdslab
