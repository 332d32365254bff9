#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace selres {

// SplitMix64 keyed by (seed, stream). The output sequence is fixed by the
// arithmetic below and identical on every platform. Stream k starts from
// state seed ^ (k * 0x9E3779B97F4A7C15), so (seed, 0) reproduces the plain
// SplitMix64 sequence for `seed`. Evaluation uses one stream per test triple
// (stream = triple ordinal), which keeps draws independent of scheduling.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : state_(seed ^ (stream * kGolden)) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform index in [0, n) by rejection sampling; n must be positive.
  std::size_t uniform_index(std::size_t n) noexcept {
    if (n <= 1) return 0;
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<std::size_t>(x % bound);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace selres
