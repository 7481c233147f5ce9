#include "routepred/pipeline.hpp"

#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include "routepred/error.hpp"
#include "routepred/text.hpp"

namespace routepred {

namespace {

constexpr std::string_view kScenarioHeader = "plate,intent,v0,a,fo,interval";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

BatchResult score(std::vector<BatchEntry> entries, std::span<const Scenario> scenarios) {
  BatchResult out;
  std::vector<Label> predicted;
  std::vector<Label> truths;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!e.result) {
      ++out.errors;
      continue;
    }
    if (const auto* p = std::get_if<Predicted>(&e.result->outcome)) {
      predicted.push_back(p->label);
      truths.push_back(scenarios[i].true_intent);
    } else {
      ++out.unregistered;
    }
  }
  if (!predicted.empty()) out.report = evaluate(predicted, truths);
  out.entries = std::move(entries);
  return out;
}

BatchEntry run_one(const Scenario& scenario, const Registry& registry, const PipelineConfig& config,
                   std::uint64_t seed, std::size_t index) {
  BatchEntry entry;
  try {
    Rng rng(stream_seed(seed, index));
    entry.result = run_pipeline(scenario, registry, config, rng);
  } catch (const std::exception& e) {
    entry.error = e.what();
  }
  return entry;
}

}  // namespace

void Scenario::validate() const {
  if (!std::isfinite(initial_velocity) || !std::isfinite(acceleration)) {
    throw InvalidParameter("scenario velocity and acceleration must be finite");
  }
  if (!std::isfinite(emitted_hz) || emitted_hz <= 0.0) throw InvalidParameter("scenario fo must be > 0");
  if (!std::isfinite(sample_interval_s) || sample_interval_s <= 0.0) {
    throw InvalidParameter("scenario interval must be > 0");
  }
}

namespace {

void check_config(const PipelineConfig& config) {
  if (!config.model) throw ConfigurationError("pipeline has no trained model");
  if (config.font == nullptr) throw ConfigurationError("pipeline has no glyph font");
  config.radar.validate();
}

}  // namespace

RunResult run_pipeline(const Scenario& scenario, const Registry& registry, const PipelineConfig& config, Rng& rng) {
  check_config(config);
  scenario.validate();

  RunResult run;
  auto& steps = run.trace.steps;

  const PlateImage frame = render_plate(scenario.plate, *config.font);
  steps.emplace_back(step::PlateDetected{image_digest(frame)});
  const PlateText plate = recognize(frame, *config.font, config.plate_threshold);
  steps.emplace_back(step::PlateRecognized{plate.str()});

  const auto record = registry.lookup(plate);
  if (!record) {
    steps.emplace_back(step::RegistryMiss{});
    steps.emplace_back(step::Terminated{});
    run.outcome = Unregistered{plate.str()};
    return run;
  }
  steps.emplace_back(step::RegistryHit{record->mobility_pattern});

  auto read = [&](double t) {
    steps.emplace_back(step::FrequencySent{scenario.emitted_hz, t});
    const FrequencyPair echo = reflect_frequency(Velocity{scenario.velocity_at(t)}, scenario.emitted_hz, config.radar, rng);
    const Velocity v = doppler_velocity(echo, config.radar);
    steps.emplace_back(step::VelocityComputed{echo.reflected_hz, v.value});
    return v;
  };
  const Velocity v1 = read(0.0);
  const Velocity v2 = read(scenario.sample_interval_s);
  const VelocityDelta dv = velocity_delta(v1, v2);
  steps.emplace_back(step::DeltaComputed{dv.value});

  const int mp = record->mobility_pattern;
  const Label label = config.model->predict(dv.value, mp);
  steps.emplace_back(step::Prediction{label});
  run.outcome = Predicted{plate.str(), v1.value, v2.value, dv.value, mp, label};
  return run;
}

BatchResult run_batch(std::span<const Scenario> scenarios, const Registry& registry, const PipelineConfig& config,
                      std::uint64_t seed) {
  check_config(config);
  std::vector<BatchEntry> entries(scenarios.size());
  const auto n = static_cast<std::int64_t>(scenarios.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto at = static_cast<std::size_t>(i);
    entries[at] = run_one(scenarios[at], registry, config, seed, at);
  }
  return score(std::move(entries), scenarios);
}

namespace serial {
BatchResult run_batch(std::span<const Scenario> scenarios, const Registry& registry, const PipelineConfig& config,
                      std::uint64_t seed) {
  check_config(config);
  std::vector<BatchEntry> entries;
  entries.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) entries.push_back(run_one(scenarios[i], registry, config, seed, i));
  return score(std::move(entries), scenarios);
}
}  // namespace serial

namespace {

// Three decimals; anything that rounds to zero prints without a minus sign.
std::string fixed3(double v, bool sign) {
  std::string out = sign ? fmt::format("{:+.3f}", v) : fmt::format("{:.3f}", v);
  if (out == "-0.000") out = sign ? "+0.000" : "0.000";
  return out;
}

}  // namespace

std::string format_report_line(const PipelineOutcome& outcome) {
  return std::visit(Overloaded{
                        [](const Unregistered& u) { return fmt::format("PLATE={} UNREGISTERED", u.plate); },
                        [](const Predicted& p) {
                          return fmt::format("PLATE={} V1={} V2={} DV={} MP={} PREDICT={}", p.plate, fixed3(p.v1, false),
                                             fixed3(p.v2, false), fixed3(p.dv, true), p.mp, label_char(p.label));
                        },
                    },
                    outcome);
}

std::string format_trace(const Trace& trace) {
  using text::format_real;
  std::string out;
  for (const auto& s : trace.steps) {
    out += std::visit(
        Overloaded{
            [](const step::PlateDetected& x) { return fmt::format("PlateDetected digest={:016x}", x.digest); },
            [](const step::PlateRecognized& x) { return "PlateRecognized text=" + x.text; },
            [](const step::RegistryHit& x) { return fmt::format("RegistryHit mp={}", x.mp); },
            [](const step::RegistryMiss&) { return std::string("RegistryMiss"); },
            [](const step::FrequencySent& x) {
              return "FrequencySent fo=" + format_real(x.emitted_hz) + " t=" + format_real(x.t);
            },
            [](const step::VelocityComputed& x) {
              return "VelocityComputed fr=" + format_real(x.reflected_hz) + " v=" + format_real(x.velocity);
            },
            [](const step::DeltaComputed& x) { return "DeltaComputed dv=" + format_real(x.dv); },
            [](const step::Prediction& x) { return std::string("Predicted label=") + label_char(x.label); },
            [](const step::Terminated&) { return std::string("Terminated"); },
        },
        s);
    out.push_back('\n');
  }
  return out;
}

Scenario ScenarioRow::to_scenario() const {
  Scenario s{PlateText(plate), intent, v0, a, fo, interval};
  s.validate();
  return s;
}

std::vector<ScenarioRow> parse_scenarios(std::string_view content) {
  const auto rows = text::lines(content);
  if (rows.empty() || rows.front() != kScenarioHeader) {
    throw ParseError(1, "scenario header must be '" + std::string(kScenarioHeader) + "'");
  }
  std::vector<ScenarioRow> out;
  out.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto f = text::split(rows[i], ',');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields 'plate,intent,v0,a,fo,interval'");
    if (f[1] != "S" && f[1] != "T") throw ParseError(line_no, "intent must be S or T");
    ScenarioRow row;
    row.line = line_no;
    row.plate = std::string(f[0]);
    row.intent = parse_label(f[1]);
    double* targets[] = {&row.v0, &row.a, &row.fo, &row.interval};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto v = text::parse_real(f[k + 2]);
      if (!v) throw ParseError(line_no, "field " + std::to_string(k + 3) + " is not a finite decimal number");
      *targets[k] = *v;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ScenarioRow> load_scenarios(const std::filesystem::path& path) {
  return parse_scenarios(text::read_file(path));
}

std::string format_scenarios(std::span<const Scenario> scenarios) {
  std::string out(kScenarioHeader);
  out.push_back('\n');
  for (const auto& s : scenarios) {
    out += s.plate.str();
    out.push_back(',');
    out.push_back(label_char(s.true_intent));
    for (const double v : {s.initial_velocity, s.acceleration, s.emitted_hz, s.sample_interval_s}) {
      out.push_back(',');
      out += text::format_real(v);
    }
    out.push_back('\n');
  }
  return out;
}

PlateText synthetic_plate(std::size_t index) { return PlateText(fmt::format("RP{:06d}", index % 1000000)); }

Encounters encounters_from_dataset(std::span<const Sample> data, Rng& rng, std::size_t unregistered_every,
                                   double interval) {
  if (!(interval > 0.0)) throw InvalidParameter("interval must be > 0");
  if (data.size() > 1000000) throw InvalidParameter("at most 1000000 encounters per batch");
  Encounters out;
  out.scenarios.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& s = data[i];
    Scenario sc{synthetic_plate(i), s.label, 40.0 + 40.0 * (uniform01(rng) - 0x1.0p-53), s.dv / interval, 24.125e9,
                interval};
    const bool skip = unregistered_every != 0 && (i + 1) % unregistered_every == 0;
    if (!skip) out.registry.upsert(VehicleRecord(sc.plate, s.mp));
    out.scenarios.push_back(std::move(sc));
  }
  return out;
}

}  // namespace routepred
