#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "routepred/metrics.hpp"
#include "routepred/model.hpp"
#include "routepred/plate.hpp"
#include "routepred/radar.hpp"
#include "routepred/registry.hpp"
#include "routepred/rng.hpp"

namespace routepred {

inline constexpr double kDefaultSampleInterval = 5.0;

/// One simulated vehicle approaching the crossroad. Speed follows
/// v(t) = initial_velocity + acceleration * t.
struct Scenario {
  PlateText plate;
  Label true_intent = Label::Straight;  ///< ground truth, never seen by the pipeline
  double initial_velocity = 0.0;
  double acceleration = 0.0;
  double emitted_hz = 24.125e9;
  double sample_interval_s = kDefaultSampleInterval;

  /// Throws InvalidParameter unless values are finite, emitted_hz > 0 and
  /// sample_interval_s > 0.
  void validate() const;

  double velocity_at(double t) const noexcept { return initial_velocity + acceleration * t; }
};

struct PipelineConfig {
  RadarCalibration radar;
  std::uint8_t plate_threshold = kDefaultThreshold;
  std::shared_ptr<const TrainedModel> model;
  const GlyphFont* font = &GlyphFont::builtin();
};

struct Unregistered {
  std::string plate;
  bool operator==(const Unregistered&) const = default;
};

struct Predicted {
  std::string plate;
  double v1 = 0.0;
  double v2 = 0.0;
  double dv = 0.0;
  int mp = 0;
  Label label = Label::Straight;
  bool operator==(const Predicted&) const = default;
};

using PipelineOutcome = std::variant<Unregistered, Predicted>;

namespace step {
struct PlateDetected {
  std::uint64_t digest;
  bool operator==(const PlateDetected&) const = default;
};
struct PlateRecognized {
  std::string text;
  bool operator==(const PlateRecognized&) const = default;
};
struct RegistryHit {
  int mp;
  bool operator==(const RegistryHit&) const = default;
};
struct RegistryMiss {
  bool operator==(const RegistryMiss&) const = default;
};
struct FrequencySent {
  double emitted_hz;
  double t;
  bool operator==(const FrequencySent&) const = default;
};
struct VelocityComputed {
  double reflected_hz;
  double velocity;
  bool operator==(const VelocityComputed&) const = default;
};
struct DeltaComputed {
  double dv;
  bool operator==(const DeltaComputed&) const = default;
};
struct Prediction {
  Label label;
  bool operator==(const Prediction&) const = default;
};
struct Terminated {
  bool operator==(const Terminated&) const = default;
};
}  // namespace step

using TraceStep = std::variant<step::PlateDetected, step::PlateRecognized, step::RegistryHit, step::RegistryMiss,
                               step::FrequencySent, step::VelocityComputed, step::DeltaComputed, step::Prediction,
                               step::Terminated>;

struct Trace {
  std::vector<TraceStep> steps;

  template <class Step>
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += std::holds_alternative<Step>(s) ? 1 : 0;
    return n;
  }

  bool operator==(const Trace&) const = default;
};

struct RunResult {
  PipelineOutcome outcome;
  Trace trace;
  bool operator==(const RunResult&) const = default;
};

/// One encounter: render + recognize the plate, gate on the registry, take
/// two radar reads sample_interval_s apart, then classify (dv, mp). A
/// registry miss ends the run before any radar read. Throws
/// ConfigurationError when config.model is null.
RunResult run_pipeline(const Scenario& scenario, const Registry& registry, const PipelineConfig& config, Rng& rng);

struct BatchEntry {
  std::optional<RunResult> result;
  std::string error;  ///< set when the run threw
};

struct BatchResult {
  std::vector<BatchEntry> entries;   ///< input order
  std::optional<Report> report;      ///< absent when nothing was predicted
  std::size_t unregistered = 0;
  std::size_t errors = 0;
};

/// Runs every scenario on its own stream Rng(stream_seed(seed, i)) and scores
/// Predicted outcomes against true_intent. Unregistered and failed runs are
/// excluded from the report. A bad config (no model, no font, invalid radar)
/// throws before any scenario runs.
BatchResult run_batch(std::span<const Scenario> scenarios, const Registry& registry, const PipelineConfig& config,
                      std::uint64_t seed);

namespace serial {
BatchResult run_batch(std::span<const Scenario> scenarios, const Registry& registry, const PipelineConfig& config,
                      std::uint64_t seed);
}

/// `PLATE=<p> V1=<v1> V2=<v2> DV=<+/-dv> MP=<mp> PREDICT=<S|T>` with three
/// decimals, or `PLATE=<p> UNREGISTERED`.
std::string format_report_line(const PipelineOutcome& outcome);

/// One step per line, reals in shortest round-trip form.
std::string format_trace(const Trace& trace);

/// Row of a scenario file before semantic validation.
struct ScenarioRow {
  std::size_t line = 0;
  std::string plate;
  Label intent = Label::Straight;
  double v0 = 0.0;
  double a = 0.0;
  double fo = 0.0;
  double interval = 0.0;

  /// Throws CharsetError / InvalidParameter when the row is not a valid scenario.
  Scenario to_scenario() const;
};

/// Header `plate,intent,v0,a,fo,interval`. Structural problems (field count,
/// non-numeric reals, bad intent) throw ParseError; plate or range problems
/// surface later from to_scenario().
std::vector<ScenarioRow> parse_scenarios(std::string_view content);
std::vector<ScenarioRow> load_scenarios(const std::filesystem::path& path);

std::string format_scenarios(std::span<const Scenario> scenarios);

/// Deterministic plate for vehicle `index`, e.g. "RP000042".
PlateText synthetic_plate(std::size_t index);

struct Encounters {
  std::vector<Scenario> scenarios;
  Registry registry;
};

/// Turns dataset rows into scenarios whose kinematics reproduce each row's dv
/// (acceleration = dv / interval) and registers each vehicle with the row's mp.
/// Every `unregistered_every`-th vehicle (1-based, 0 disables) is left out of
/// the registry. Initial speeds are drawn from `rng` within [40, 80).
Encounters encounters_from_dataset(std::span<const Sample> data, Rng& rng, std::size_t unregistered_every = 0,
                                   double interval = kDefaultSampleInterval);

}  // namespace routepred
