#pragma once

#include <array>
#include <span>

#include "routepred/sample.hpp"

namespace routepred {

inline constexpr double kVarianceFloor = 1e-9;

/// Per-class parameters: prior, Gaussian over dv, Bernoulli over mp.
struct NbClassParams {
  double prior = 0.5;
  double mean = 0.0;
  double variance = 1.0;
  double p_mp = 0.5;  ///< P(mp = 1 | class), Laplace-smoothed

  bool operator==(const NbClassParams&) const = default;
};

/// Gaussian x Bernoulli naive Bayes over (dv, mp).
class NbModel {
 public:
  /// Maximum-likelihood mean/variance (variance floored at kVarianceFloor),
  /// Bernoulli (count + 1) / (n + 2). Throws DegenerateDataset on
  /// single-class data.
  static NbModel fit(std::span<const Sample> data);

  /// Builds a model from explicit parameters; throws InvalidParameter when
  /// they break the model invariants.
  static NbModel from_params(const NbClassParams& straight, const NbClassParams& turn);

  /// log prior + log N(dv; mean, variance) + log Bernoulli(mp), indexed by label.
  std::array<double, kNumLabels> log_scores(double dv, int mp) const;

  /// Argmax of log_scores; an exact tie resolves to Straight.
  Label predict(double dv, int mp) const;

  const NbClassParams& params(Label l) const noexcept { return params_[index_of(l)]; }

  bool operator==(const NbModel&) const = default;

 private:
  NbModel() = default;
  std::array<NbClassParams, kNumLabels> params_{};
};

/// Decision rule on precomputed class scores, shared by predict().
constexpr Label argmax_label(double straight_score, double turn_score) noexcept {
  return turn_score > straight_score ? Label::Turn : Label::Straight;
}

}  // namespace routepred
