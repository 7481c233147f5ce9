// routepred: generate, train, evaluate, simulate, plate and registry tools.
//
// Exit codes: 0 success, 1 runtime error (I/O, parse, degenerate data),
// 2 usage error (bad flags or out-of-range parameters).

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "routepred/batch.hpp"
#include "routepred/calibration.hpp"
#include "routepred/datagen.hpp"
#include "routepred/error.hpp"
#include "routepred/metrics.hpp"
#include "routepred/model.hpp"
#include "routepred/pipeline.hpp"
#include "routepred/plate.hpp"
#include "routepred/registry.hpp"
#include "routepred/sample.hpp"
#include "routepred/text.hpp"

namespace fs = std::filesystem;
using namespace routepred;

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

/// Thrown for parameter problems detected after flag parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const CLI::Validator kOddPositive(
    [](std::string& s) -> std::string {
      int v = 0;
      if (!CLI::detail::lexical_cast(s, v) || v < 1 || v % 2 == 0) return "k must be an odd positive integer";
      return {};
    },
    "ODD");

const GlyphFont& font_or_builtin(const std::string& path, std::optional<GlyphFont>& storage) {
  if (path.empty()) return GlyphFont::builtin();
  storage.emplace(GlyphFont::load(path));
  return *storage;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  GenConfig config;
  std::string out;
  std::string scenarios_out;
  std::string registry_out;
  std::size_t unregistered_every = 0;
  double interval = kDefaultSampleInterval;
};

int cmd_generate(const GenerateArgs& a) {
  try {
    a.config.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  if (!(a.interval > 0.0)) throw UsageError("--interval must be > 0");
  const Dataset data = generate(a.config);
  save_dataset(a.out, data);
  std::cout << fmt::format("wrote {} rows to {}\n", data.size(), a.out);
  if (!a.scenarios_out.empty() || !a.registry_out.empty()) {
    Rng speeds(stream_seed(a.config.seed, 2));
    const auto enc = encounters_from_dataset(data, speeds, a.unregistered_every, a.interval);
    if (!a.scenarios_out.empty()) {
      text::write_file(a.scenarios_out, format_scenarios(enc.scenarios));
      std::cout << fmt::format("wrote {} scenarios to {}\n", enc.scenarios.size(), a.scenarios_out);
    }
    if (!a.registry_out.empty()) {
      enc.registry.save(a.registry_out);
      std::cout << fmt::format("wrote {} registry records to {}\n", enc.registry.size(), a.registry_out);
    }
  }
  return kOk;
}

// ------------------------------------------------------------------- train

struct TrainArgs {
  std::string algo;
  std::string data;
  std::string out_model;
  TrainOptions opts;
};

int cmd_train(const TrainArgs& a) {
  const Dataset data = load_dataset(a.data);
  const auto model = TrainedModel::train(parse_algorithm(a.algo), data, a.opts);
  model.save(a.out_model);
  std::cout << fmt::format("trained {} on {} rows\n", a.algo, data.size());
  std::cout << fmt::format("training accuracy: {:.4f}\n", accuracy(model, data));
  return kOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string model;
  std::string data;
  std::string report = "table";
};

int cmd_evaluate(const EvaluateArgs& a) {
  const auto model = TrainedModel::load(a.model);
  const Dataset data = load_dataset(a.data);
  std::vector<Label> truths;
  truths.reserve(data.size());
  for (const auto& s : data) truths.push_back(s.label);
  const Report report = evaluate(predict_batch(model, data), truths);
  std::cout << (a.report == "tsv" ? format_tsv(report) : format_table(report));
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenarios;
  std::string registry;
  std::string model;
  std::string trace_out;
  std::string font;
  std::uint64_t seed = 0;
  double scale = 1.0;
  double noise_sigma = 0.0;
  int threshold = kDefaultThreshold;
  bool serial = false;
};

int cmd_simulate(const SimulateArgs& a) {
  PipelineConfig config;
  config.radar = RadarCalibration{a.scale, a.noise_sigma};
  try {
    config.radar.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  config.plate_threshold = static_cast<std::uint8_t>(a.threshold);
  std::optional<GlyphFont> font_storage;
  config.font = &font_or_builtin(a.font, font_storage);

  const auto rows = load_scenarios(a.scenarios);
  const Registry registry = Registry::load(a.registry);
  config.model = std::make_shared<const TrainedModel>(TrainedModel::load(a.model));

  // Rows that fail validation are reported in place; the rest run as one batch.
  std::vector<Scenario> valid;
  std::vector<std::optional<std::size_t>> slot(rows.size());
  std::vector<std::string> row_errors(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      valid.push_back(rows[i].to_scenario());
      slot[i] = valid.size() - 1;
    } catch (const Error& e) {
      row_errors[i] = e.what();
    }
  }
  const BatchResult batch =
      a.serial ? serial::run_batch(valid, registry, config, a.seed) : run_batch(valid, registry, config, a.seed);
  const auto& entries = batch.entries;

  std::string traces;
  std::vector<Label> predicted;
  std::vector<Label> truths;
  std::size_t unregistered = 0;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!slot[i]) {
      ++errors;
      std::cout << fmt::format("LINE={} ERROR {}\n", rows[i].line, row_errors[i]);
      continue;
    }
    const auto& entry = entries[*slot[i]];
    if (!entry.result) {
      ++errors;
      std::cout << fmt::format("LINE={} ERROR {}\n", rows[i].line, entry.error);
      continue;
    }
    std::cout << format_report_line(entry.result->outcome) << '\n';
    traces += fmt::format("scenario {}\n", rows[i].line);
    traces += format_trace(entry.result->trace);
    if (const auto* p = std::get_if<Predicted>(&entry.result->outcome)) {
      predicted.push_back(p->label);
      truths.push_back(valid[*slot[i]].true_intent);
    } else {
      ++unregistered;
    }
  }
  std::cout << fmt::format("\nscenarios: {}  predicted: {}  unregistered: {}  errors: {}\n", rows.size(),
                           predicted.size(), unregistered, errors);
  if (!predicted.empty()) std::cout << '\n' << format_table(evaluate(predicted, truths));
  if (!a.trace_out.empty()) text::write_file(a.trace_out, traces);
  return errors == 0 ? kOk : kRuntimeError;
}

// ------------------------------------------------------------------- plate

struct PlateArgs {
  std::string text;
  std::string out;
  std::string in;
  std::string font;
  int threshold = kDefaultThreshold;
};

int cmd_plate_render(const PlateArgs& a) {
  std::optional<GlyphFont> storage;
  const auto& font = font_or_builtin(a.font, storage);
  const PlateText plate{a.text};
  text::write_file(a.out, format_grid(render_plate(plate, font)));
  std::cout << fmt::format("rendered {} to {}\n", plate.str(), a.out);
  return kOk;
}

int cmd_plate_recognize(const PlateArgs& a) {
  std::optional<GlyphFont> storage;
  const auto& font = font_or_builtin(a.font, storage);
  const PlateImage image = parse_grid(text::read_file(a.in));
  std::cout << recognize(image, font, static_cast<std::uint8_t>(a.threshold)).str() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- registry

struct RegistryArgs {
  std::string file;
  std::string plate;
  int mp = 0;
};

int cmd_registry_add(const RegistryArgs& a) {
  Registry registry = fs::exists(a.file) ? Registry::load(a.file) : Registry{};
  registry.upsert(VehicleRecord(PlateText(a.plate), a.mp));
  registry.save(a.file);
  std::cout << fmt::format("{},{}\n", a.plate, a.mp);
  return kOk;
}

int cmd_registry_list(const RegistryArgs& a) {
  std::cout << Registry::load(a.file).serialize();
  return kOk;
}

int cmd_registry_remove(const RegistryArgs& a) {
  Registry registry = Registry::load(a.file);
  if (!registry.remove(PlateText(a.plate))) {
    std::cerr << "error: plate " << a.plate << " is not registered\n";
    return kRuntimeError;
  }
  registry.save(a.file);
  return kOk;
}

// --------------------------------------------------------------- calibrate

int cmd_calibrate(std::uint64_t seed) {
  const auto run = calibration_run(seed);
  std::cout << fmt::format("seed {}  train {}  test {}\n\n", seed, run.split.train.size(), run.split.test.size());
  std::cout << format_table(run.report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossroad route prediction: radar velocity delta + mobility pattern classifiers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic (dv, mp, label) dataset");
  generate_cmd->add_option("--out", gen.out, "Dataset output path")->required();
  generate_cmd->add_option("--seed", gen.config.seed, "Generator seed")->capture_default_str();
  generate_cmd->add_option("--n-straight", gen.config.n_straight, "Straight samples")->capture_default_str();
  generate_cmd->add_option("--n-turn", gen.config.n_turn, "Turn samples")->capture_default_str();
  generate_cmd->add_option("--mu-dv-straight", gen.config.mu_dv_straight)->capture_default_str();
  generate_cmd->add_option("--sigma-dv-straight", gen.config.sigma_dv_straight)->capture_default_str();
  generate_cmd->add_option("--mu-dv-turn", gen.config.mu_dv_turn)->capture_default_str();
  generate_cmd->add_option("--sigma-dv-turn", gen.config.sigma_dv_turn)->capture_default_str();
  generate_cmd->add_option("--p-mp-straight", gen.config.p_mp_straight)->capture_default_str();
  generate_cmd->add_option("--p-mp-turn", gen.config.p_mp_turn)->capture_default_str();
  generate_cmd->add_option("--label-noise", gen.config.label_noise)->capture_default_str();
  generate_cmd->add_option("--scenarios-out", gen.scenarios_out, "Also write one scenario per row");
  generate_cmd->add_option("--registry-out", gen.registry_out, "Also write the matching registry");
  generate_cmd->add_option("--unregistered-every", gen.unregistered_every,
                           "Leave every Nth vehicle out of the registry (0 = none)");
  generate_cmd->add_option("--interval", gen.interval, "Seconds between radar reads")->capture_default_str();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit a classifier and write a model file");
  train_cmd->add_option("--algo", train.algo, "knn, nb or dt")->required()->check(CLI::IsMember({"knn", "nb", "dt"}));
  train_cmd->add_option("--data", train.data, "Training dataset")->required();
  train_cmd->add_option("--out-model", train.out_model, "Model output path")->required();
  train_cmd->add_option("--k", train.opts.knn_k, "KNN neighbours")->check(kOddPositive)->capture_default_str();
  train_cmd->add_option("--max-depth", train.opts.max_depth, "Decision tree depth limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EvaluateArgs eval;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a model on a dataset");
  evaluate_cmd->add_option("--model", eval.model)->required();
  evaluate_cmd->add_option("--data", eval.data)->required();
  evaluate_cmd->add_option("--report", eval.report, "table or tsv")
      ->check(CLI::IsMember({"table", "tsv"}))
      ->capture_default_str();

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the recognition + radar + prediction pipeline");
  simulate_cmd->add_option("--scenarios", sim.scenarios)->required();
  simulate_cmd->add_option("--registry", sim.registry)->required();
  simulate_cmd->add_option("--model", sim.model)->required();
  simulate_cmd->add_option("--seed", sim.seed, "Radar noise seed")->capture_default_str();
  simulate_cmd->add_option("--trace-out", sim.trace_out, "Write per-scenario step traces");
  simulate_cmd->add_option("--scale", sim.scale, "Radar velocity scale k")->capture_default_str();
  simulate_cmd->add_option("--noise-sigma", sim.noise_sigma, "Reflected-frequency noise (Hz)")->capture_default_str();
  simulate_cmd->add_option("--threshold", sim.threshold, "Plate binarization threshold")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  simulate_cmd->add_option("--font", sim.font, "Glyph font file (default: built-in)");
  simulate_cmd->add_flag("--serial", sim.serial, "Use the serial batch reference");

  PlateArgs plate;
  auto* plate_cmd = app.add_subcommand("plate", "Render or recognize plate images");
  plate_cmd->require_subcommand(1);
  auto* render_cmd = plate_cmd->add_subcommand("render", "Render plate text to a '.'/'#' grid file");
  render_cmd->add_option("--text", plate.text)->required();
  render_cmd->add_option("--out", plate.out)->required();
  render_cmd->add_option("--font", plate.font);
  auto* recognize_cmd = plate_cmd->add_subcommand("recognize", "Recognize a grid file");
  recognize_cmd->add_option("--in", plate.in)->required();
  recognize_cmd->add_option("--threshold", plate.threshold)->check(CLI::Range(0, 255))->capture_default_str();
  recognize_cmd->add_option("--font", plate.font);

  RegistryArgs reg;
  auto* registry_cmd = app.add_subcommand("registry", "Manage the vehicle registry file");
  registry_cmd->require_subcommand(1);
  auto* add_cmd = registry_cmd->add_subcommand("add", "Insert or replace a vehicle");
  add_cmd->add_option("--file", reg.file)->required();
  add_cmd->add_option("--plate", reg.plate)->required();
  add_cmd->add_option("--mp", reg.mp, "Mobility pattern 0/1")->required()->check(CLI::Range(0, 1));
  auto* list_cmd = registry_cmd->add_subcommand("list", "Print the registry");
  list_cmd->add_option("--file", reg.file)->required();
  auto* remove_cmd = registry_cmd->add_subcommand("remove", "Delete a vehicle");
  remove_cmd->add_option("--file", reg.file)->required();
  remove_cmd->add_option("--plate", reg.plate)->required();

  std::uint64_t calibrate_seed = kCalibrationSeed;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Re-run the committed generator calibration");
  calibrate_cmd->add_option("--seed", calibrate_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen);
    if (*train_cmd) return cmd_train(train);
    if (*evaluate_cmd) return cmd_evaluate(eval);
    if (*simulate_cmd) return cmd_simulate(sim);
    if (*render_cmd) return cmd_plate_render(plate);
    if (*recognize_cmd) return cmd_plate_recognize(plate);
    if (*add_cmd) return cmd_registry_add(reg);
    if (*list_cmd) return cmd_registry_list(reg);
    if (*remove_cmd) return cmd_registry_remove(reg);
    if (*calibrate_cmd) return cmd_calibrate(calibrate_seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
