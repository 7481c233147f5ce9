#pragma once

#include <span>

#include "routepred/sample.hpp"

namespace routepred {

inline constexpr int kDefaultKnnK = 5;

/// k-nearest-neighbour vote over the raw (dv, mp) plane.
class KnnModel {
 public:
  /// Stores the samples verbatim. Throws InvalidParameter unless k is odd,
  /// positive and at most the number of samples.
  static KnnModel fit(std::span<const Sample> data, int k = kDefaultKnnK);

  /// Majority label among the k nearest training points (Euclidean distance).
  /// Equal distances rank the earlier training sample first.
  Label predict(double dv, int mp) const;

  int k() const noexcept { return k_; }
  const Dataset& samples() const noexcept { return samples_; }

  bool operator==(const KnnModel&) const = default;

 private:
  KnnModel(Dataset samples, int k) : samples_(std::move(samples)), k_(k) {}

  Dataset samples_;
  int k_;
};

}  // namespace routepred
