// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <memory>

#include "routepred/batch.hpp"
#include "routepred/datagen.hpp"
#include "routepred/pipeline.hpp"

using namespace routepred;

namespace {

const Dataset& queries() {
  static const Dataset d = [] {
    GenConfig c;
    c.seed = 1;
    return generate(c);
  }();
  return d;
}

const TrainedModel& knn_model() {
  static const TrainedModel m = TrainedModel::train(Algorithm::Knn, generate(GenConfig{}));
  return m;
}

const std::vector<PlateImage>& plates() {
  static const std::vector<PlateImage> images = [] {
    std::vector<PlateImage> out;
    for (std::size_t i = 0; i < 4000; ++i) out.push_back(render_plate(synthetic_plate(i)));
    return out;
  }();
  return images;
}

const Encounters& encounters() {
  static const Encounters e = [] {
    Rng rng(5);
    return encounters_from_dataset(queries(), rng, 4);
  }();
  return e;
}

PipelineConfig dt_config() {
  PipelineConfig c;
  c.model = std::make_shared<const TrainedModel>(TrainedModel::train(Algorithm::DecisionTree, generate(GenConfig{})));
  return c;
}

void BM_KnnPredictSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::predict_batch(knn_model(), queries()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(queries().size()));
}

void BM_KnnPredictParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(predict_batch(knn_model(), queries()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(queries().size()));
}

void BM_RecognizeSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::recognize_batch(plates()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plates().size()));
}

void BM_RecognizeParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(recognize_batch(plates()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(plates().size()));
}

void BM_PipelineSerial(benchmark::State& state) {
  const auto config = dt_config();
  for (auto _ : state) benchmark::DoNotOptimize(serial::run_batch(encounters().scenarios, encounters().registry, config, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(encounters().scenarios.size()));
}

void BM_PipelineParallel(benchmark::State& state) {
  const auto config = dt_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(encounters().scenarios, encounters().registry, config, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(encounters().scenarios.size()));
}

}  // namespace

BENCHMARK(BM_KnnPredictSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnPredictParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecognizeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecognizeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
