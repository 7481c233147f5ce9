#include "routepred/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "routepred/error.hpp"

namespace routepred {

namespace {

using Counts = std::array<std::size_t, kNumLabels>;
__extension__ using u128 = unsigned __int128;

double feature_value(const Sample& s, Feature f) { return f == Feature::Dv ? s.dv : static_cast<double>(s.mp); }

// Weighted child Gini is n - Q with Q = sumsq(L)/nL + sumsq(R)/nR, so the best
// split maximises Q. Q is kept as the exact fraction num/den.
struct SplitScore {
  u128 num = 0;
  u128 den = 1;

  static SplitScore of(const Counts& l, const Counts& r) {
    const u128 nl = l[0] + l[1];
    const u128 nr = r[0] + r[1];
    const u128 sl = static_cast<u128>(l[0]) * l[0] + static_cast<u128>(l[1]) * l[1];
    const u128 sr = static_cast<u128>(r[0]) * r[0] + static_cast<u128>(r[1]) * r[1];
    return {sl * nr + sr * nl, nl * nr};
  }

  bool better_than(const SplitScore& o) const { return num * o.den > o.num * den; }
};

struct Candidate {
  Feature feature;
  double threshold;
  SplitScore score;
};

double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  // Adjacent doubles can round the midpoint up onto hi; keep lo <= mid < hi.
  return mid < hi ? mid : lo;
}

class Builder {
 public:
  Builder(std::span<const Sample> data, int max_depth) : data_(data), max_depth_(max_depth) {}

  std::vector<DtNode> build() {
    std::vector<std::size_t> all(data_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    grow(all, 0);
    return std::move(nodes_);
  }

 private:
  std::size_t grow(std::vector<std::size_t>& idx, int depth) {
    Counts counts{};
    for (auto i : idx) ++counts[index_of(data_[i].label)];

    const std::size_t me = nodes_.size();
    nodes_.push_back(DtNode{});
    nodes_[me].counts = counts;
    nodes_[me].label = majority(counts);

    const bool pure = counts[0] == 0 || counts[1] == 0;
    if (pure || depth >= max_depth_) return me;
    const auto best = best_split(idx, counts);
    if (!best) return me;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto i : idx) (feature_value(data_[i], best->feature) <= best->threshold ? left : right).push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    nodes_[me].is_leaf = false;
    nodes_[me].feature = best->feature;
    nodes_[me].threshold = best->threshold;
    const std::size_t l = grow(left, depth + 1);
    const std::size_t r = grow(right, depth + 1);
    nodes_[me].left = l;
    nodes_[me].right = r;
    return me;
  }

  std::optional<Candidate> best_split(const std::vector<std::size_t>& idx, const Counts& total) const {
    std::optional<Candidate> best;
    std::vector<std::pair<double, Label>> column(idx.size());
    for (const Feature f : {Feature::Dv, Feature::Mp}) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        column[j] = {feature_value(data_[idx[j]], f), data_[idx[j]].label};
      }
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      Counts left{};
      for (std::size_t j = 0; j + 1 < column.size(); ++j) {
        ++left[index_of(column[j].second)];
        if (column[j].first == column[j + 1].first) continue;
        const Counts right{total[0] - left[0], total[1] - left[1]};
        const auto score = SplitScore::of(left, right);
        // Strict improvement keeps the earlier feature and the lower threshold on ties.
        if (!best || score.better_than(best->score)) {
          best = Candidate{f, midpoint(column[j].first, column[j + 1].first), score};
        }
      }
    }
    return best;
  }

  std::span<const Sample> data_;
  int max_depth_;
  std::vector<DtNode> nodes_;
};

}  // namespace

DtModel DtModel::fit(std::span<const Sample> data, int max_depth) {
  if (max_depth < 1) throw InvalidParameter("decision tree max_depth must be >= 1");
  require_both_classes(data);
  for (const auto& s : data) validate(s);
  return DtModel(Builder(data, max_depth).build());
}

DtModel DtModel::from_nodes(std::vector<DtNode> nodes) {
  if (nodes.empty()) throw InvalidInput("decision tree has no nodes");
  std::vector<int> parents(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.is_leaf) {
      if (n.label != majority(n.counts)) {
        throw InvalidInput("leaf " + std::to_string(i) + " label disagrees with its class counts");
      }
      continue;
    }
    // Children are emitted after their parent, which also rules out cycles.
    if (n.left <= i || n.right <= i || n.left >= nodes.size() || n.right >= nodes.size() || n.left == n.right) {
      throw InvalidInput("node " + std::to_string(i) + " has invalid child indices");
    }
    if (!std::isfinite(n.threshold)) throw InvalidInput("node " + std::to_string(i) + " threshold is not finite");
    ++parents[n.left];
    ++parents[n.right];
  }
  if (parents[0] != 0) throw InvalidInput("root node must not have a parent");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (parents[i] != 1) throw InvalidInput("node " + std::to_string(i) + " must have exactly one parent");
  }
  return DtModel(std::move(nodes));
}

Label DtModel::predict(double dv, int mp) const {
  std::size_t at = 0;
  while (!nodes_[at].is_leaf) {
    const auto& n = nodes_[at];
    const double v = n.feature == Feature::Dv ? dv : static_cast<double>(mp);
    at = v <= n.threshold ? n.left : n.right;
  }
  return nodes_[at].label;
}

int DtModel::depth() const {
  std::function<int(std::size_t)> walk = [&](std::size_t at) -> int {
    const auto& n = nodes_[at];
    return n.is_leaf ? 0 : 1 + std::max(walk(n.left), walk(n.right));
  };
  return walk(0);
}

}  // namespace routepred
