#include "routepred/calibration.hpp"

#include "routepred/batch.hpp"

namespace routepred {

HoldoutResult holdout_evaluation(const GenConfig& config, double test_fraction, Algorithm algo,
                                 const TrainOptions& opts) {
  const Dataset data = generate(config);
  Rng split_rng(stream_seed(config.seed, 1));
  Split split = train_test_split(data, test_fraction, split_rng);
  TrainedModel model = TrainedModel::train(algo, split.train, opts);
  std::vector<Label> truths;
  truths.reserve(split.test.size());
  for (const auto& s : split.test) truths.push_back(s.label);
  Report report = evaluate(predict_batch(model, split.test), truths);
  return HoldoutResult{std::move(split), std::move(model), std::move(report)};
}

HoldoutResult calibration_run(std::uint64_t seed) {
  GenConfig config;
  config.n_straight *= 2;
  config.n_turn *= 2;
  config.seed = seed;
  return holdout_evaluation(config);
}

}  // namespace routepred
