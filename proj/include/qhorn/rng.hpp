#pragma once

#include <cstdint>

namespace qhorn {

/// SplitMix64: small, seedable and identical across languages, so generated
/// suites can be reproduced from a seed alone.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi]. Uses rejection so results do not depend on
  /// the standard library's distribution implementation.
  int uniform(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = max() - (max() % span);
    std::uint64_t r;
    do {
      r = (*this)();
    } while (r >= limit);
    return lo + static_cast<int>(r % span);
  }

  bool coin(int percent_true) { return uniform(0, 99) < percent_true; }

 private:
  std::uint64_t state_;
};

/// Derive an independent stream seed from a base seed and an index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base ^ (0x632be59bd9b4e019ULL * (index + 1)));
  return g();
}

}  // namespace qhorn
