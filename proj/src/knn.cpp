#include "routepred/knn.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "routepred/error.hpp"

namespace routepred {

KnnModel KnnModel::fit(std::span<const Sample> data, int k) {
  if (k < 1 || k % 2 == 0) throw InvalidParameter("knn k must be odd and >= 1, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > data.size()) {
    throw InvalidParameter("knn k=" + std::to_string(k) + " exceeds training size " + std::to_string(data.size()));
  }
  for (const auto& s : data) validate(s);
  return KnnModel(Dataset(data.begin(), data.end()), k);
}

Label KnnModel::predict(double dv, int mp) const {
  struct Neighbour {
    double dist2;
    std::size_t index;
  };
  std::vector<Neighbour> all;
  all.reserve(samples_.size());
  const double qm = static_cast<double>(mp);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double dx = samples_[i].dv - dv;
    const double dm = static_cast<double>(samples_[i].mp) - qm;
    all.push_back({dx * dx + dm * dm, i});
  }
  // Squared distance ranks identically to Euclidean distance.
  const auto kth = all.begin() + k_;
  std::partial_sort(all.begin(), kth, all.end(), [](const Neighbour& a, const Neighbour& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
  });
  int turn_votes = 0;
  for (auto it = all.begin(); it != kth; ++it) {
    if (samples_[it->index].label == Label::Turn) ++turn_votes;
  }
  return 2 * turn_votes > k_ ? Label::Turn : Label::Straight;
}

}  // namespace routepred
