#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "routepred/decision_tree.hpp"
#include "routepred/knn.hpp"
#include "routepred/naive_bayes.hpp"
#include "routepred/sample.hpp"

namespace routepred {

enum class Algorithm { Knn, NaiveBayes, DecisionTree };

/// "knn", "nb" or "dt".
std::string_view algorithm_name(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);

struct TrainOptions {
  int knn_k = kDefaultKnnK;
  int max_depth = kDefaultMaxDepth;
};

/// Any of the three fitted classifiers behind one predict call.
class TrainedModel {
 public:
  using Variant = std::variant<KnnModel, NbModel, DtModel>;

  TrainedModel(KnnModel m) : model_(std::move(m)) {}
  TrainedModel(NbModel m) : model_(std::move(m)) {}
  TrainedModel(DtModel m) : model_(std::move(m)) {}

  static TrainedModel train(Algorithm algo, std::span<const Sample> data, const TrainOptions& opts = {});

  Algorithm algorithm() const noexcept;
  Label predict(double dv, int mp) const;
  const Variant& get() const noexcept { return model_; }

  /// Versioned text form; reals are written in shortest round-trip form so a
  /// reloaded model predicts bit-identically.
  std::string serialize() const;
  static TrainedModel parse(std::string_view content);

  static TrainedModel load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  bool operator==(const TrainedModel&) const = default;

 private:
  Variant model_;
};

}  // namespace routepred
