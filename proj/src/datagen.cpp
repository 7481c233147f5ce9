#include "routepred/datagen.hpp"

#include <cmath>
#include <string>

#include "routepred/error.hpp"
#include "routepred/rng.hpp"

namespace routepred {

namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter(std::string(name) + " must lie in [0, 1]");
}

void require_sigma(double s, const char* name) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter(std::string(name) + " must be finite and > 0");
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
}

Label flip(Label l) { return l == Label::Straight ? Label::Turn : Label::Straight; }

}  // namespace

void GenConfig::validate() const {
  require_finite(mu_dv_straight, "mu_dv_straight");
  require_finite(mu_dv_turn, "mu_dv_turn");
  require_sigma(sigma_dv_straight, "sigma_dv_straight");
  require_sigma(sigma_dv_turn, "sigma_dv_turn");
  require_probability(p_mp_straight, "p_mp_straight");
  require_probability(p_mp_turn, "p_mp_turn");
  require_probability(label_noise, "label_noise");
}

Dataset generate(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  Dataset data;
  data.reserve(config.n_straight + config.n_turn);
  auto emit = [&](std::size_t count, Label label, double mu, double sigma, double p_mp) {
    for (std::size_t i = 0; i < count; ++i) {
      Sample s;
      s.dv = gaussian(rng, mu, sigma);
      s.mp = bernoulli(rng, p_mp) ? 1 : 0;
      s.label = bernoulli(rng, config.label_noise) ? flip(label) : label;
      data.push_back(s);
    }
  };
  emit(config.n_straight, Label::Straight, config.mu_dv_straight, config.sigma_dv_straight, config.p_mp_straight);
  emit(config.n_turn, Label::Turn, config.mu_dv_turn, config.sigma_dv_turn, config.p_mp_turn);
  fisher_yates(data.begin(), data.end(), rng);
  return data;
}

}  // namespace routepred
