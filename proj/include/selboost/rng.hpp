#pragma once

#include <cstdint>
#include <vector>

namespace selboost {

// Splittable counter-based pseudo-random generator.
//
// Every random decision in the library (splits, folds, GOSS subsampling)
// flows from one 64-bit seed through this generator, so independent
// implementations can reproduce runs bit-for-bit. The algorithm is fixed
// and documented in docs/determinism.md; changing it is a format break.
//
// Core: the SplitMix64 finalizer
//   mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//             z ^= z >> 27; z *= 0x94D049BB133111EB
//             z ^= z >> 31; return z
// The k-th output (k = 1, 2, ...) of a stream with seed s is
//   mix64(s + k * 0x9E3779B97F4A7C15)
// which is SplitMix64 expressed as a pure function of a counter.
//
// Substreams: derive(s, tag) = mix64(s ^ (0x9E3779B97F4A7C15 * (tag + 1))).
class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Seed of the substream identified by `tag` (independent of stream position).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ (kGolden * (tag + 1)));
  }

  Rng split(std::uint64_t tag) const { return Rng(derive(seed_, tag)); }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(seed_ + counter_ * kGolden);
  }

  /// Uniform integer in [0, bound), bound >= 1. Unbiased via rejection:
  /// draw 64-bit words until one is >= 2^64 mod bound, then reduce mod bound.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) from the top 53 bits of one word.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// In-place Fisher-Yates: for i = n-1 .. 1, swap(a[i], a[next_below(i+1)]).
  template <typename T>
  void shuffle(std::vector<T>& a) {
    for (std::size_t i = a.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(a[i - 1], a[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Substream tags used by the pipeline. Fixed constants, part of the
// reproducibility contract.
namespace rng_tag {
inline constexpr std::uint64_t kSplit = 1;    // train/valid/test split
inline constexpr std::uint64_t kFold = 2;     // cross-validation folds
inline constexpr std::uint64_t kGoss = 3;     // per-iteration GOSS draws
inline constexpr std::uint64_t kCvTrain = 4;  // per-fold training seeds
inline constexpr std::uint64_t kSynth = 100;  // synthetic data generators (tests/tools)
}  // namespace rng_tag

}  // namespace selboost
