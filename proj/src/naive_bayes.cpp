#include "routepred/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "routepred/error.hpp"

namespace routepred {

NbModel NbModel::fit(std::span<const Sample> data) {
  require_both_classes(data);
  std::array<std::size_t, kNumLabels> count{};
  std::array<std::size_t, kNumLabels> mp_ones{};
  std::array<double, kNumLabels> sum{};
  for (const auto& s : data) {
    validate(s);
    const auto c = index_of(s.label);
    ++count[c];
    mp_ones[c] += static_cast<std::size_t>(s.mp);
    sum[c] += s.dv;
  }
  NbModel model;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const double n = static_cast<double>(count[c]);
    const double mean = sum[c] / n;
    double ss = 0.0;
    for (const auto& s : data) {
      if (index_of(s.label) == c) ss += (s.dv - mean) * (s.dv - mean);
    }
    auto& p = model.params_[c];
    p.prior = n / static_cast<double>(data.size());
    p.mean = mean;
    p.variance = std::max(ss / n, kVarianceFloor);
    p.p_mp = (static_cast<double>(mp_ones[c]) + 1.0) / (n + 2.0);
  }
  return model;
}

NbModel NbModel::from_params(const NbClassParams& straight, const NbClassParams& turn) {
  for (const auto* p : {&straight, &turn}) {
    if (!(p->prior > 0.0 && p->prior < 1.0)) throw InvalidParameter("naive bayes prior must lie in (0, 1)");
    if (!std::isfinite(p->mean)) throw InvalidParameter("naive bayes mean must be finite");
    if (!(p->variance >= kVarianceFloor) || !std::isfinite(p->variance)) {
      throw InvalidParameter("naive bayes variance must be finite and >= 1e-9");
    }
    if (!(p->p_mp > 0.0 && p->p_mp < 1.0)) throw InvalidParameter("naive bayes mp probability must lie in (0, 1)");
  }
  if (std::abs(straight.prior + turn.prior - 1.0) > 1e-12) {
    throw InvalidParameter("naive bayes priors must sum to 1");
  }
  NbModel model;
  model.params_[index_of(Label::Straight)] = straight;
  model.params_[index_of(Label::Turn)] = turn;
  return model;
}

std::array<double, kNumLabels> NbModel::log_scores(double dv, int mp) const {
  std::array<double, kNumLabels> out{};
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const auto& p = params_[c];
    const double d = dv - p.mean;
    const double log_density = -0.5 * std::log(2.0 * std::numbers::pi * p.variance) - d * d / (2.0 * p.variance);
    const double log_mass = std::log(mp == 1 ? p.p_mp : 1.0 - p.p_mp);
    out[c] = std::log(p.prior) + log_density + log_mass;
  }
  return out;
}

Label NbModel::predict(double dv, int mp) const {
  const auto s = log_scores(dv, mp);
  return argmax_label(s[index_of(Label::Straight)], s[index_of(Label::Turn)]);
}

}  // namespace routepred
