#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "routepred/sample.hpp"

namespace routepred {

inline constexpr int kDefaultMaxDepth = 8;

enum class Feature : std::uint8_t { Dv = 0, Mp = 1 };

/// Node of a fitted tree. Internal nodes route `value <= threshold` to
/// `left`; every node keeps the class counts of the samples that reached it.
struct DtNode {
  bool is_leaf = true;
  Feature feature = Feature::Dv;
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  Label label = Label::Straight;
  std::array<std::size_t, kNumLabels> counts{};

  bool operator==(const DtNode&) const = default;
};

/// Majority label of a count pair; equal counts give Straight.
constexpr Label majority(const std::array<std::size_t, kNumLabels>& counts) noexcept {
  return counts[index_of(Label::Turn)] > counts[index_of(Label::Straight)] ? Label::Turn : Label::Straight;
}

/// CART-style binary classification tree over (dv, mp).
class DtModel {
 public:
  /// Greedy Gini splits at midpoints between consecutive distinct feature
  /// values. Splitting stops when a node is pure, sits at max_depth, or has
  /// no candidate threshold. Equal-impurity candidates prefer dv over mp,
  /// then the lower threshold. Throws DegenerateDataset on single-class
  /// data and InvalidParameter when max_depth < 1.
  static DtModel fit(std::span<const Sample> data, int max_depth = kDefaultMaxDepth);

  /// Validates structure (child indices, leaf labels, acyclicity) before
  /// accepting nodes; node 0 is the root. Throws InvalidInput.
  static DtModel from_nodes(std::vector<DtNode> nodes);

  Label predict(double dv, int mp) const;

  std::span<const DtNode> nodes() const noexcept { return nodes_; }

  /// Number of splits on the longest root-to-leaf path.
  int depth() const;

  bool operator==(const DtModel&) const = default;

 private:
  explicit DtModel(std::vector<DtNode> nodes) : nodes_(std::move(nodes)) {}

  std::vector<DtNode> nodes_;
};

}  // namespace routepred
