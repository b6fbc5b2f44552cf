#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace grasp {

// All randomness in the library flows through these two generators so that
// streams are reproducible bit-for-bit across compilers and standard
// libraries (std:: distributions are implementation-defined).
//
//   SplitMix64  seed mixing / stream derivation
//   Pcg32       PCG-XSH-RR 64/32, the per-stream generator
//
// Floating-point draws take the top 53 bits of two 32-bit outputs.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Folds a sequence of words into one 64-bit seed. Order-sensitive.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::span<const std::uint64_t> words) noexcept {
  std::uint64_t h = splitmix64(base);
  for (auto w : words) h = splitmix64(h ^ splitmix64(w));
  return h;
}

template <typename... Words>
constexpr std::uint64_t mix_seed(std::uint64_t base, Words... words) noexcept {
  const std::uint64_t arr[] = {static_cast<std::uint64_t>(words)...};
  return mix_seed(base, std::span<const std::uint64_t>(arr, sizeof...(Words)));
}

/// FNV-1a, used for content hashes in manifests and for folding strings into seeds.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x14057B7EF767814Full) noexcept
      : inc_((stream << 1u) | 1u) {
    state_ = 0;
    next_u32();
    state_ += splitmix64(seed);
    next_u32();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return 0xFFFFFFFFu; }
  result_type operator()() noexcept { return next_u32(); }

  std::uint32_t next_u32() noexcept {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ull + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((~rot + 1u) & 31u));
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform in [0, 1).
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound). Lemire's method with rejection, so unbiased.
  std::uint32_t below(std::uint32_t bound) noexcept {
    if (bound <= 1) return 0;
    std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (~bound + 1u) % bound;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(next_u32()) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  /// Uniform integer in [lo, hi] inclusive.
  int between(int lo, int hi) noexcept {
    return lo + static_cast<int>(below(static_cast<std::uint32_t>(hi - lo + 1)));
  }

  bool bernoulli(double p) noexcept { return uniform01() < p; }

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = below(static_cast<std::uint32_t>(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

}  // namespace grasp
