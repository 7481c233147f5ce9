#pragma once

#include "routepred/datagen.hpp"
#include "routepred/metrics.hpp"
#include "routepred/model.hpp"
#include "routepred/sample.hpp"

namespace routepred {

struct HoldoutResult {
  Split split;
  TrainedModel model;
  Report report;
};

/// Generates `config`, splits it with Rng(stream_seed(config.seed, 1)),
/// trains on the train part and scores the held-out part.
HoldoutResult holdout_evaluation(const GenConfig& config, double test_fraction = 0.5,
                                 Algorithm algo = Algorithm::DecisionTree, const TrainOptions& opts = {});

/// The committed calibration: default config with both class counts doubled
/// (5998 rows), a 50/50 split and the decision tree.
HoldoutResult calibration_run(std::uint64_t seed = kCalibrationSeed);

}  // namespace routepred
