#pragma once

// Data-parallel kernels. Each has a serial reference in routepred::serial
// with identical results; the OpenMP versions only change execution order.

#include <span>
#include <vector>

#include "routepred/model.hpp"
#include "routepred/plate.hpp"
#include "routepred/sample.hpp"

namespace routepred {

std::vector<Label> predict_batch(const TrainedModel& model, std::span<const Sample> queries);

std::vector<PlateText> recognize_batch(std::span<const PlateImage> images, const GlyphFont& font = GlyphFont::builtin(),
                                       std::uint8_t threshold = kDefaultThreshold);

/// Training-set accuracy helper: fraction of samples whose label the model reproduces.
double accuracy(const TrainedModel& model, std::span<const Sample> data);

namespace serial {

std::vector<Label> predict_batch(const TrainedModel& model, std::span<const Sample> queries);

std::vector<PlateText> recognize_batch(std::span<const PlateImage> images, const GlyphFont& font = GlyphFont::builtin(),
                                       std::uint8_t threshold = kDefaultThreshold);

}  // namespace serial

}  // namespace routepred
