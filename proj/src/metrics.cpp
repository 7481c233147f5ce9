#include "routepred/metrics.hpp"

#include <fmt/format.h>

#include "routepred/error.hpp"

namespace routepred {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

constexpr std::array<const char*, 5> kRowNames = {"S", "T", "micro avg", "macro avg", "weighted avg"};

std::array<const MetricRow*, 5> rows_of(const Report& r) {
  return {&r.per_class[0], &r.per_class[1], &r.micro, &r.macro, &r.weighted};
}

}  // namespace

Report evaluate(std::span<const Label> predictions, std::span<const Label> truths) {
  if (predictions.size() != truths.size()) {
    throw InvalidInput(fmt::format("evaluate: {} predictions vs {} truths", predictions.size(), truths.size()));
  }
  if (truths.empty()) throw InvalidInput("evaluate: no samples");

  Report r;
  r.total = truths.size();
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const auto p = index_of(predictions[i]);
    const auto t = index_of(truths[i]);
    if (p == t) {
      ++r.counts[t].tp;
    } else {
      ++r.counts[p].fp;
      ++r.counts[t].fn;
    }
  }

  ClassCounts pooled;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const auto& k = r.counts[c];
    auto& row = r.per_class[c];
    row.precision = ratio(k.tp, k.tp + k.fp);
    row.recall = ratio(k.tp, k.tp + k.fn);
    row.f1 = harmonic(row.precision, row.recall);
    row.support = k.tp + k.fn;
    pooled.tp += k.tp;
    pooled.fp += k.fp;
    pooled.fn += k.fn;
  }

  r.micro.precision = ratio(pooled.tp, pooled.tp + pooled.fp);
  r.micro.recall = ratio(pooled.tp, pooled.tp + pooled.fn);
  r.micro.f1 = harmonic(r.micro.precision, r.micro.recall);

  const double n = static_cast<double>(r.total);
  for (const auto& row : r.per_class) {
    r.macro.precision += row.precision / static_cast<double>(kNumLabels);
    r.macro.recall += row.recall / static_cast<double>(kNumLabels);
    r.macro.f1 += row.f1 / static_cast<double>(kNumLabels);
    const double w = static_cast<double>(row.support) / n;
    r.weighted.precision += w * row.precision;
    r.weighted.recall += w * row.recall;
    r.weighted.f1 += w * row.f1;
  }
  r.micro.support = r.macro.support = r.weighted.support = r.total;
  return r;
}

std::string format_table(const Report& report) {
  std::string out = fmt::format("{:>12}  {:>9} {:>9} {:>9} {:>9}\n\n", "", "precision", "recall", "f1-score", "support");
  const auto rows = rows_of(report);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == kNumLabels) out.push_back('\n');
    const auto& row = *rows[i];
    out += fmt::format("{:>12}  {:>9.3f} {:>9.3f} {:>9.3f} {:>9}\n", kRowNames[i], row.precision, row.recall,
                       row.f1, row.support);
  }
  return out;
}

std::string format_tsv(const Report& report) {
  std::string out = "class\tprecision\trecall\tf1\tsupport\n";
  const auto rows = rows_of(report);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = *rows[i];
    out += fmt::format("{}\t{:.6f}\t{:.6f}\t{:.6f}\t{}\n", kRowNames[i], row.precision, row.recall, row.f1,
                       row.support);
  }
  return out;
}

}  // namespace routepred
