#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

namespace routepred {

/// SplitMix64 generator. The output sequence is fully determined by the seed
/// and identical on every platform.
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Uniform draw on (0, 1] with 53 bits of resolution.
double uniform01(Rng& rng) noexcept;

/// Box-Muller normal deviate; consumes exactly two uniform01 draws.
double gaussian(Rng& rng, double mu, double sigma) noexcept;

/// True with probability p; consumes one uniform01 draw.
bool bernoulli(Rng& rng, double p) noexcept;

/// Integer in [0, bound) from one next() call (modulo reduction). bound > 0.
std::uint64_t below(Rng& rng, std::uint64_t bound) noexcept;

/// Seed of the independent stream assigned to item `index` of a batch:
/// the index-th output of Rng(seed), computed without stepping through it.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  Rng jumped(seed + index * Rng::kGamma);
  return jumped.next();
}

template <class RandomIt>
void fisher_yates(RandomIt first, RandomIt last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const std::uint64_t j = below(rng, i);
    using std::swap;
    swap(first[static_cast<std::ptrdiff_t>(i - 1)], first[static_cast<std::ptrdiff_t>(j)]);
  }
}

}  // namespace routepred
