#include <doctest.h>

#include <cmath>
#include <limits>

#include "routepred/batch.hpp"
#include "routepred/calibration.hpp"
#include "routepred/datagen.hpp"
#include "routepred/error.hpp"
#include "routepred/model.hpp"

using namespace routepred;

namespace {

struct ClassStats {
  std::size_t n = 0;
  double sum = 0.0;
  std::size_t mp = 0;
};

}  // namespace

TEST_CASE("defaults produce the configured row count") {
  const auto d = generate(GenConfig{});
  CHECK(d.size() == 2999);
  for (const auto& s : d) {
    CHECK(std::isfinite(s.dv));
    CHECK((s.mp == 0 || s.mp == 1));
  }
}

TEST_CASE("same config, same bytes; different seed, different data") {
  GenConfig c;
  c.n_straight = 300;
  c.n_turn = 200;
  c.seed = 17;
  CHECK(format_dataset(generate(c)) == format_dataset(generate(c)));
  auto other = c;
  other.seed = 18;
  CHECK(format_dataset(generate(c)) != format_dataset(generate(other)));
}

TEST_CASE("class-conditional moments without label noise") {
  GenConfig c;
  c.n_straight = 4000;
  c.n_turn = 5000;
  c.label_noise = 0.0;
  c.seed = 99;
  const auto d = generate(c);
  ClassStats st[2];
  for (const auto& s : d) {
    auto& x = st[index_of(s.label)];
    ++x.n;
    x.sum += s.dv;
    x.mp += static_cast<std::size_t>(s.mp);
  }
  REQUIRE(st[0].n == 4000);
  REQUIRE(st[1].n == 5000);
  const double se_s = c.sigma_dv_straight / std::sqrt(4000.0);
  const double se_t = c.sigma_dv_turn / std::sqrt(5000.0);
  CHECK(std::abs(st[0].sum / 4000.0 - c.mu_dv_straight) < 4.0 * se_s);
  CHECK(std::abs(st[1].sum / 5000.0 - c.mu_dv_turn) < 4.0 * se_t);
  const double pse_s = std::sqrt(c.p_mp_straight * (1 - c.p_mp_straight) / 4000.0);
  const double pse_t = std::sqrt(c.p_mp_turn * (1 - c.p_mp_turn) / 5000.0);
  CHECK(std::abs(static_cast<double>(st[0].mp) / 4000.0 - c.p_mp_straight) < 4.0 * pse_s);
  CHECK(std::abs(static_cast<double>(st[1].mp) / 5000.0 - c.p_mp_turn) < 4.0 * pse_t);
}

TEST_CASE("label noise flips about the configured fraction") {
  GenConfig c;
  c.n_straight = 5000;
  c.n_turn = 5000;
  c.label_noise = 0.2;
  // Classes so far apart that the sign of dv recovers the generating class.
  c.mu_dv_straight = 100.0;
  c.mu_dv_turn = -100.0;
  c.sigma_dv_straight = c.sigma_dv_turn = 1.0;
  c.seed = 5;
  std::size_t flipped = 0;
  const auto d = generate(c);
  for (const auto& s : d) flipped += (s.dv > 0) != (s.label == Label::Straight);
  const double rate = static_cast<double>(flipped) / 10000.0;
  CHECK(std::abs(rate - 0.2) < 4.0 * std::sqrt(0.2 * 0.8 / 10000.0));

  c.label_noise = 0.0;
  flipped = 0;
  for (const auto& s : generate(c)) flipped += (s.dv > 0) != (s.label == Label::Straight);
  CHECK(flipped == 0);
}

TEST_CASE("well-separated noiseless classes are learned almost perfectly") {
  GenConfig c;
  c.n_straight = c.n_turn = 500;
  c.mu_dv_turn = -8.0;
  c.label_noise = 0.0;
  c.seed = 3;
  for (const auto algo : {Algorithm::Knn, Algorithm::NaiveBayes, Algorithm::DecisionTree}) {
    const auto r = holdout_evaluation(c, 0.3, algo);
    CHECK(r.report.micro.f1 >= 0.99);
  }
}

TEST_CASE("holdout split sizes") {
  GenConfig c;
  c.n_straight = c.n_turn = 50;
  const auto r = holdout_evaluation(c, 0.25);
  CHECK(r.split.test.size() == 25);
  CHECK(r.split.train.size() == 75);
  CHECK(r.report.total == 25);
}

TEST_CASE("empty request gives an empty dataset") {
  GenConfig c;
  c.n_straight = c.n_turn = 0;
  CHECK(generate(c).empty());
}

TEST_CASE("validate rejects bad parameters") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto bad = [](auto mutate) {
    GenConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    CHECK_THROWS_AS(generate(c), InvalidParameter);
  };
  bad([](GenConfig& c) { c.sigma_dv_straight = 0.0; });
  bad([](GenConfig& c) { c.sigma_dv_turn = -1.0; });
  bad([&](GenConfig& c) { c.sigma_dv_turn = nan; });
  bad([](GenConfig& c) { c.p_mp_straight = 1.5; });
  bad([](GenConfig& c) { c.p_mp_turn = -0.1; });
  bad([](GenConfig& c) { c.label_noise = 2.0; });
  bad([&](GenConfig& c) { c.mu_dv_turn = nan; });
  bad([](GenConfig& c) { c.mu_dv_straight = std::numeric_limits<double>::infinity(); });
  CHECK_NOTHROW(GenConfig{}.validate());
}
