#include <doctest.h>

#include <clocale>
#include <cmath>
#include <memory>

#include "routepred/datagen.hpp"
#include "routepred/error.hpp"
#include "routepred/model.hpp"
#include "routepred/pipeline.hpp"

using namespace routepred;

namespace {

const Dataset kTwoRows = {{-3.0, 1, Label::Turn}, {0.1, 0, Label::Straight}};

PipelineConfig two_row_config() {
  PipelineConfig c;
  c.model = std::make_shared<const TrainedModel>(TrainedModel::train(Algorithm::Knn, kTwoRows, {.knn_k = 1}));
  return c;
}

Scenario worked_example() { return Scenario{PlateText("LEA2465"), Label::Turn, 65.5, -0.1, 24.125e9, 5.0}; }

Registry one_vehicle(const char* plate, int mp) {
  Registry r;
  r.upsert(VehicleRecord(PlateText(plate), mp));
  return r;
}

}  // namespace

TEST_CASE("worked example") {
  Rng rng(1);
  const auto run = run_pipeline(worked_example(), one_vehicle("LEA2465", 1), two_row_config(), rng);
  const auto* p = std::get_if<Predicted>(&run.outcome);
  REQUIRE(p != nullptr);
  CHECK(p->plate == "LEA2465");
  CHECK(p->v1 == doctest::Approx(65.5).epsilon(1e-9));
  CHECK(p->v2 == doctest::Approx(65.0).epsilon(1e-9));
  CHECK(p->dv == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(p->mp == 1);
  CHECK(format_report_line(run.outcome) == "PLATE=LEA2465 V1=65.500 V2=65.000 DV=-0.500 MP=1 PREDICT=S");

  const auto& steps = run.trace.steps;
  REQUIRE(steps.size() == 9);
  CHECK(std::holds_alternative<step::PlateDetected>(steps[0]));
  CHECK(std::get<step::PlateRecognized>(steps[1]).text == "LEA2465");
  CHECK(std::get<step::RegistryHit>(steps[2]).mp == 1);
  CHECK(std::get<step::FrequencySent>(steps[3]).t == 0.0);
  CHECK(std::holds_alternative<step::VelocityComputed>(steps[4]));
  CHECK(std::get<step::FrequencySent>(steps[5]).t == 5.0);
  CHECK(std::holds_alternative<step::VelocityComputed>(steps[6]));
  CHECK(std::holds_alternative<step::DeltaComputed>(steps[7]));
  CHECK(std::get<step::Prediction>(steps[8]).label == Label::Straight);
}

TEST_CASE("registry miss stops before the radar") {
  Rng rng(1);
  const auto before = rng.state();
  const auto run = run_pipeline(worked_example(), one_vehicle("ABC123", 0), two_row_config(), rng);
  CHECK(std::get<Unregistered>(run.outcome).plate == "LEA2465");
  CHECK(format_report_line(run.outcome) == "PLATE=LEA2465 UNREGISTERED");
  CHECK(run.trace.count<step::FrequencySent>() == 0);
  CHECK(run.trace.count<step::VelocityComputed>() == 0);
  CHECK(run.trace.count<step::RegistryMiss>() == 1);
  CHECK(std::holds_alternative<step::Terminated>(run.trace.steps.back()));
  CHECK(rng.state() == before);

  Rng again(1);
  CHECK(run_pipeline(worked_example(), Registry{}, two_row_config(), again).trace.count<step::Terminated>() == 1);
}

TEST_CASE("constant speed gives zero delta") {
  Rng rng(2);
  auto s = worked_example();
  s.acceleration = 0.0;
  const auto run = run_pipeline(s, one_vehicle("LEA2465", 0), two_row_config(), rng);
  const auto& p = std::get<Predicted>(run.outcome);
  CHECK(p.dv == 0.0);
  CHECK(p.label == Label::Straight);
  CHECK(format_report_line(run.outcome) == "PLATE=LEA2465 V1=65.500 V2=65.500 DV=+0.000 MP=0 PREDICT=S");
}

TEST_CASE("report line formatting") {
  CHECK(format_report_line(Predicted{"LEA2465", 65.5, 62.5, -3.0, 1, Label::Turn}) ==
        "PLATE=LEA2465 V1=65.500 V2=62.500 DV=-3.000 MP=1 PREDICT=T");
  CHECK(format_report_line(Predicted{"X1", 10.0, 10.1, 0.1, 0, Label::Straight}) ==
        "PLATE=X1 V1=10.000 V2=10.100 DV=+0.100 MP=0 PREDICT=S");
  // A tiny negative delta rounds to zero and must not print as -0.000.
  CHECK(format_report_line(Predicted{"X1", 10.0, 10.0, -1e-12, 0, Label::Straight}) ==
        "PLATE=X1 V1=10.000 V2=10.000 DV=+0.000 MP=0 PREDICT=S");
  CHECK(format_report_line(Predicted{"X1", -1e-9, 0.0, 1e-9, 0, Label::Straight}) ==
        "PLATE=X1 V1=0.000 V2=0.000 DV=+0.000 MP=0 PREDICT=S");

  const char* old = std::setlocale(LC_ALL, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_ALL, "de_DE.UTF-8") != nullptr) {
    CHECK(format_report_line(Predicted{"X1", 1.5, 1.5, 0.0, 0, Label::Straight}) ==
          "PLATE=X1 V1=1.500 V2=1.500 DV=+0.000 MP=0 PREDICT=S");
  }
  std::setlocale(LC_ALL, saved.c_str());
}

TEST_CASE("measured delta tracks the kinematics") {
  Rng rng(123);
  const auto config = two_row_config();
  const auto reg = one_vehicle("CAR1", 1);
  for (int i = 0; i < 500; ++i) {
    Scenario s{PlateText("CAR1"), Label::Straight, 5.0 + 100.0 * uniform01(rng), -2.0 + 4.0 * uniform01(rng),
               1e9 + 3e10 * uniform01(rng), 0.5 + 10.0 * uniform01(rng)};
    const auto p = std::get<Predicted>(run_pipeline(s, reg, config, rng).outcome);
    REQUIRE(std::abs(p.dv - s.acceleration * s.sample_interval_s) < 1e-9 * std::max(1.0, std::abs(s.initial_velocity)));
  }
}

TEST_CASE("runs are deterministic, including noisy radar") {
  auto config = two_row_config();
  config.radar.noise_sigma_hz = 50.0;
  const auto reg = one_vehicle("LEA2465", 1);
  Rng a(77);
  Rng b(77);
  const auto ra = run_pipeline(worked_example(), reg, config, a);
  const auto rb = run_pipeline(worked_example(), reg, config, b);
  CHECK(ra == rb);
  CHECK(format_trace(ra.trace) == format_trace(rb.trace));
  CHECK(std::get<Predicted>(ra.outcome).v1 != 65.5);
}

TEST_CASE("trace text") {
  Trace t;
  t.steps = {step::PlateDetected{0xabc}, step::PlateRecognized{"AB1"}, step::RegistryHit{1},
             step::FrequencySent{24.125e9, 0.0}, step::VelocityComputed{24.125e9, 0.5}, step::DeltaComputed{-0.5},
             step::Prediction{Label::Turn}};
  CHECK(format_trace(t) ==
        "PlateDetected digest=0000000000000abc\n"
        "PlateRecognized text=AB1\n"
        "RegistryHit mp=1\n"
        "FrequencySent fo=2.4125e+10 t=0\n"
        "VelocityComputed fr=2.4125e+10 v=0.5\n"
        "DeltaComputed dv=-0.5\n"
        "Predicted label=T\n");
}

TEST_CASE("missing model is a configuration error") {
  PipelineConfig c;
  Rng rng(1);
  CHECK_THROWS_AS(run_pipeline(worked_example(), one_vehicle("LEA2465", 1), c, rng), ConfigurationError);
  const std::vector<Scenario> one = {worked_example()};
  CHECK_THROWS_AS(run_batch(one, Registry{}, c, 1), ConfigurationError);
}

TEST_CASE("scenario validation") {
  auto s = worked_example();
  s.emitted_hz = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
  s = worked_example();
  s.sample_interval_s = -1.0;
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
  s = worked_example();
  s.initial_velocity = std::nan("");
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
}

TEST_CASE("scenario files") {
  const auto rows = parse_scenarios("plate,intent,v0,a,fo,interval\nLEA2465,T,65.5,-0.1,24125000000,5\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].line == 2);
  const auto s = rows[0].to_scenario();
  CHECK(s.plate.str() == "LEA2465");
  CHECK(s.initial_velocity == 65.5);
  CHECK(s.acceleration == -0.1);
  CHECK(format_scenarios(std::vector<Scenario>{s}) ==
        "plate,intent,v0,a,fo,interval\nLEA2465,T,65.5,-0.1,2.4125e+10,5\n");

  auto expect_line = [](const char* content, std::size_t line) {
    try {
      parse_scenarios(content);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("plate,v0\n", 1);
  expect_line("plate,intent,v0,a,fo,interval\nA,T,1,2,3\n", 2);
  expect_line("plate,intent,v0,a,fo,interval\nA,X,1,2,3,4\n", 2);
  expect_line("plate,intent,v0,a,fo,interval\nA,T,1,2,3,4\nA,T,fast,2,3,4\n", 3);

  // Semantic problems surface per row.
  const auto lower = parse_scenarios("plate,intent,v0,a,fo,interval\nlea1,T,1,0,1e9,5\n");
  CHECK_THROWS_AS(lower[0].to_scenario(), CharsetError);
  const auto zero_fo = parse_scenarios("plate,intent,v0,a,fo,interval\nLEA1,T,1,0,0,5\n");
  CHECK_THROWS_AS(zero_fo[0].to_scenario(), InvalidParameter);
}

TEST_CASE("encounters from a dataset") {
  GenConfig g;
  g.n_straight = g.n_turn = 60;
  const auto data = generate(g);
  Rng rng(8);
  const auto enc = encounters_from_dataset(data, rng, 3, 5.0);
  REQUIRE(enc.scenarios.size() == data.size());
  CHECK(enc.registry.size() == data.size() - data.size() / 3);
  CHECK(synthetic_plate(42).str() == "RP000042");
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& s = enc.scenarios[i];
    CHECK(s.plate == synthetic_plate(i));
    CHECK(s.true_intent == data[i].label);
    CHECK(s.initial_velocity >= 40.0);
    CHECK(s.initial_velocity < 80.0);
    CHECK(s.acceleration * 5.0 == doctest::Approx(data[i].dv));
    const auto rec = enc.registry.lookup(s.plate);
    CHECK(rec.has_value() == ((i + 1) % 3 != 0));
    if (rec) CHECK(rec->mobility_pattern == data[i].mp);
  }
}

TEST_CASE("batch runs") {
  GenConfig g;
  g.n_straight = g.n_turn = 100;
  const auto data = generate(g);
  Rng rng(9);
  const auto enc = encounters_from_dataset(data, rng, 2);
  PipelineConfig config;
  config.model = std::make_shared<const TrainedModel>(TrainedModel::train(Algorithm::DecisionTree, data));

  const auto par = run_batch(enc.scenarios, enc.registry, config, 11);
  const auto ser = serial::run_batch(enc.scenarios, enc.registry, config, 11);
  REQUIRE(par.entries.size() == ser.entries.size());
  for (std::size_t i = 0; i < par.entries.size(); ++i) CHECK(par.entries[i].result == ser.entries[i].result);
  CHECK(par.report == ser.report);
  CHECK(par.unregistered == 100);
  CHECK(par.errors == 0);
  REQUIRE(par.report.has_value());
  CHECK(par.report->total == 100);

  const auto none = run_batch(enc.scenarios, Registry{}, config, 11);
  CHECK(none.unregistered == enc.scenarios.size());
  CHECK_FALSE(none.report.has_value());

  CHECK_FALSE(run_batch(std::vector<Scenario>{}, enc.registry, config, 1).report.has_value());
}
