#include "routepred/rng.hpp"

#include <cmath>
#include <numbers>

namespace routepred {

double uniform01(Rng& rng) noexcept {
  constexpr double kUlp = 0x1.0p-53;
  const double u = static_cast<double>(rng.next() >> 11) * kUlp;
  return u == 0.0 ? kUlp : u;
}

double gaussian(Rng& rng, double mu, double sigma) noexcept {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mu + sigma * z;
}

bool bernoulli(Rng& rng, double p) noexcept { return uniform01(rng) <= p; }

std::uint64_t below(Rng& rng, std::uint64_t bound) noexcept { return rng.next() % bound; }

}  // namespace routepred
