#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "routepred/rng.hpp"

using namespace routepred;

namespace {

// Transcription of the published splitmix64.c reference (public domain).
struct ReferenceSplitMix64 {
  std::uint64_t x;
  std::uint64_t next() {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
    z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
    return z ^ (z >> 31);
  }
};

}  // namespace

TEST_CASE("splitmix64 matches the reference algorithm") {
  Rng rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);

  for (const std::uint64_t seed : {0ull, 1ull, 42ull, 0xFFFFFFFFFFFFFFFFull, 0x123456789ABCDEFull}) {
    Rng a(seed);
    ReferenceSplitMix64 ref{seed};
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == ref.next());
  }
}

TEST_CASE("same seed gives the same first million outputs") {
  Rng a(7);
  Rng b(7);
  ReferenceSplitMix64 ref{7};
  bool same = true;
  for (int i = 0; i < 1'000'000; ++i) {
    const auto v = a.next();
    same = same && v == b.next() && v == ref.next();
  }
  CHECK(same);
}

TEST_CASE("seeds 1 and 2 diverge immediately") {
  Rng a(1);
  Rng b(2);
  ReferenceSplitMix64 ra{1};
  ReferenceSplitMix64 rb{2};
  const auto va = a.next();
  const auto vb = b.next();
  CHECK(va == ra.next());
  CHECK(vb == rb.next());
  CHECK(va != vb);
}

TEST_CASE("uniform01 stays in (0, 1] and is centred") {
  Rng rng(123);
  double sum = 0.0;
  constexpr int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("uniform01 uses the top 53 bits") {
  Rng rng(99);
  const auto raw = Rng(99).next();
  CHECK(uniform01(rng) == static_cast<double>(raw >> 11) * 0x1.0p-53);
}

TEST_CASE("gaussian") {
  SUBCASE("sigma 0 returns mu exactly") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) CHECK(gaussian(rng, 3.25, 0.0) == 3.25);
  }
  SUBCASE("consumes two uniforms per draw") {
    Rng a(11);
    Rng b(11);
    (void)gaussian(a, 0.0, 1.0);
    (void)uniform01(b);
    (void)uniform01(b);
    CHECK(a.state() == b.state());
  }
  SUBCASE("sample mean within 4 sigma / sqrt(n)") {
    Rng rng(2024);
    constexpr int n = 100'000;
    const double mu = -2.0;
    const double sigma = 1.5;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = gaussian(rng, mu, sigma);
      sum += x;
      sq += (x - mu) * (x - mu);
    }
    CHECK(std::abs(sum / n - mu) <= 4.0 * sigma / std::sqrt(n));
    CHECK(std::sqrt(sq / n) == doctest::Approx(sigma).epsilon(0.02));
  }
  SUBCASE("deterministic per seed") {
    Rng a(8);
    Rng b(8);
    for (int i = 0; i < 1000; ++i) REQUIRE(gaussian(a, 1.0, 2.0) == gaussian(b, 1.0, 2.0));
  }
}

TEST_CASE("stream_seed is the index-th output of the base stream") {
  for (const std::uint64_t seed : {0ull, 42ull, 0xDEADBEEFull}) {
    Rng base(seed);
    for (std::uint64_t i = 0; i < 200; ++i) REQUIRE(stream_seed(seed, i) == base.next());
  }
}

TEST_CASE("fisher_yates permutes and is reproducible") {
  std::vector<int> a(100);
  std::iota(a.begin(), a.end(), 0);
  auto b = a;
  Rng ra(77);
  Rng rb(77);
  fisher_yates(a.begin(), a.end(), ra);
  fisher_yates(b.begin(), b.end(), rb);
  CHECK(a == b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(100);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);

  std::vector<int> empty;
  fisher_yates(empty.begin(), empty.end(), ra);
  CHECK(empty.empty());
}
