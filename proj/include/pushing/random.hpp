#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace pushing {

/// Counter-based generator: output k of stream `seed` is
/// splitmix64_mix(seed + (k + 1) * 0x9E3779B97F4A7C15). Bit-identical on every
/// platform, independent of the standard library's distributions.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    ++counter_;
    return mix(seed_ + counter_ * kGolden);
  }

  /// Uniform in [0, bound] by rejection on the top of the 64-bit range.
  std::uint64_t uniform_to(std::uint64_t bound) {
    if (bound == ~std::uint64_t{0}) return next();
    const std::uint64_t range = bound + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
    std::uint64_t x = next();
    while (x > limit) x = next();
    return x % range;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Independent seed for sub-stream `stream` of a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return CounterRng::mix(seed ^ CounterRng::mix(stream + 0x632BE59BD9B4E019ULL));
}

/// Fisher-Yates over 0..n-1, swapping position i with a uniform j in [0, i]
/// for i = n-1 down to 1.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  CounterRng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_to(i - 1));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace pushing
