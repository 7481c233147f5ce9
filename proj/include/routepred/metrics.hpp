#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "routepred/sample.hpp"

namespace routepred {

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  bool operator==(const ClassCounts&) const = default;
};

struct MetricRow {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;

  bool operator==(const MetricRow&) const = default;
};

/// Per-class and averaged precision / recall / F1, laid out like a
/// classification report: S, T, micro avg, macro avg, weighted avg.
struct Report {
  std::array<ClassCounts, kNumLabels> counts{};
  std::array<MetricRow, kNumLabels> per_class{};
  MetricRow micro;
  MetricRow macro;
  MetricRow weighted;
  std::size_t total = 0;

  const MetricRow& of(Label l) const noexcept { return per_class[index_of(l)]; }

  bool operator==(const Report&) const = default;
};

/// Zero denominators yield 0. Supports count truths. Throws InvalidInput on a
/// length mismatch or empty input.
Report evaluate(std::span<const Label> predictions, std::span<const Label> truths);

/// Fixed-width table with three decimals.
std::string format_table(const Report& report);

/// Tab-separated, header `class precision recall f1 support`, six decimals.
std::string format_tsv(const Report& report);

}  // namespace routepred
