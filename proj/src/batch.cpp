#include "routepred/batch.hpp"

#include <cstdint>
#include <optional>

#include "routepred/error.hpp"

namespace routepred {

std::vector<Label> predict_batch(const TrainedModel& model, std::span<const Sample> queries) {
  std::vector<Label> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& q = queries[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = model.predict(q.dv, q.mp);
  }
  return out;
}

std::vector<PlateText> recognize_batch(std::span<const PlateImage> images, const GlyphFont& font,
                                       std::uint8_t threshold) {
  std::vector<std::optional<PlateText>> slots(images.size());
  std::vector<std::string> errors(images.size());
  const auto n = static_cast<std::int64_t>(images.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto at = static_cast<std::size_t>(i);
    try {
      slots[at].emplace(recognize(images[at], font, threshold));
    } catch (const std::exception& e) {
      errors[at] = e.what();
    }
  }
  std::vector<PlateText> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    // Report the first failure in input order, as the serial loop would.
    if (!slots[i]) throw SegmentationError("image " + std::to_string(i) + ": " + errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

double accuracy(const TrainedModel& model, std::span<const Sample> data) {
  if (data.empty()) return 0.0;
  const auto predicted = predict_batch(model, data);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) hits += predicted[i] == data[i].label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

namespace serial {

std::vector<Label> predict_batch(const TrainedModel& model, std::span<const Sample> queries) {
  std::vector<Label> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(model.predict(q.dv, q.mp));
  return out;
}

std::vector<PlateText> recognize_batch(std::span<const PlateImage> images, const GlyphFont& font,
                                       std::uint8_t threshold) {
  std::vector<PlateText> out;
  out.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    try {
      out.push_back(recognize(images[i], font, threshold));
    } catch (const std::exception& e) {
      throw SegmentationError("image " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace serial

}  // namespace routepred
