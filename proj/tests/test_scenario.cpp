#include <catch2/catch_amalgamated.hpp>

#include "fleethfc/scenario.hpp"

using namespace fleethfc;

namespace {

const char* kSample = R"(
# sample scenario
field.width_m = 1000
field.height_m = 800
field.grid_resolution_m = 10
field.generator = gaussian
field.hotspot = 300,700,150,1.0
field.hotspot = 700,300,150,0.9
tasks.count = 50
tasks.injection_time_s = 90
fleet.count = 2
fleet.speed_mps = 1.5
fleet.battery_time_s = 3000
fleet.start_xyz = 50,50,0
fleet.goal_xyz = 900,700,0
clustering.method = fcm-max
solver = hfc
mode = ncm2
hfc.population_size = 100
hfc.max_iter = 40
hfc.screening_sample = 1
weights.lambda2 = 5000
seed = 7
)";

}  // namespace

TEST_CASE("parse_scenario reads every section") {
  std::vector<std::string> errors;
  const ScenarioConfig cfg = parse_scenario(kSample, errors);
  CHECK(errors.empty());
  CHECK(cfg.field.width_m == 1000.0);
  CHECK(cfg.field.height_m == 800.0);
  CHECK(cfg.field.hotspots.size() == 2);
  CHECK(cfg.field.hotspots[1].intensity == 0.9);
  CHECK(cfg.task_count == 50);
  REQUIRE(cfg.sampling.injection_fixed_s.has_value());
  CHECK(*cfg.sampling.injection_fixed_s == 90.0);
  CHECK(cfg.fleet_count == 2);
  CHECK(cfg.speed_mps == 1.5);
  CHECK(cfg.clustering == ClusteringMethod::fcm_max);
  CHECK(cfg.mode == SolveMode::ncm2);
  CHECK(cfg.hfc.population_size == 100);
  CHECK(cfg.weights.lambda2 == 5000.0);
  CHECK(cfg.seed == 7);
  const auto fleet = cfg.fleet();
  REQUIRE(fleet.size() == 2);
  CHECK(fleet[1].goal.x == 900.0);
  CHECK(validate_scenario(cfg).empty());
}

TEST_CASE("unknown keys and malformed values are reported by key") {
  std::vector<std::string> errors;
  parse_scenario("bogus.key = 1\nfield.width_m = abc\nmode = sideways\n", errors);
  REQUIRE(errors.size() == 3);
  CHECK(errors[0].find("bogus.key") != std::string::npos);
  CHECK(errors[1].find("field.width_m") != std::string::npos);
  CHECK(errors[2].find("mode") != std::string::npos);
}

TEST_CASE("validate_scenario catches range violations with key names") {
  std::vector<std::string> errors;
  ScenarioConfig cfg = parse_scenario(kSample, errors);
  REQUIRE(errors.empty());

  ScenarioConfig bad = cfg;
  bad.field.width_m = -5;
  auto errs = validate_scenario(bad);
  REQUIRE_FALSE(errs.empty());
  CHECK(errs[0].find("field.width_m") != std::string::npos);

  bad = cfg;
  bad.hfc.screening_sample = 3;  // 3 > 1% of 100
  errs = validate_scenario(bad);
  REQUIRE_FALSE(errs.empty());
  CHECK(errs[0].find("hfc.screening_sample") != std::string::npos);

  bad = cfg;
  bad.sampling.priority_max = 150;
  errs = validate_scenario(bad);
  REQUIRE_FALSE(errs.empty());
  CHECK(errs[0].find("priority") != std::string::npos);

  bad = cfg;
  bad.task_count = 1;  // fewer tasks than vehicles
  errs = validate_scenario(bad);
  REQUIRE_FALSE(errs.empty());
  CHECK(errs[0].find("tasks.count") != std::string::npos);

  bad = cfg;
  bad.battery_time_s = 0;
  errs = validate_scenario(bad);
  CHECK_FALSE(errs.empty());
}

TEST_CASE("ncm1 mode lifts the screening-sample constraint") {
  std::vector<std::string> errors;
  ScenarioConfig cfg = parse_scenario(kSample, errors);
  cfg.mode = SolveMode::ncm1;
  cfg.hfc.screening_sample = 0;
  CHECK(validate_scenario(cfg).empty());
}

TEST_CASE("config hash pins the effective configuration") {
  std::vector<std::string> errors;
  const ScenarioConfig cfg = parse_scenario(kSample, errors);
  const std::string h1 = config_hash_hex(cfg);
  CHECK(h1 == config_hash_hex(cfg));
  ScenarioConfig other = cfg;
  other.seed = 8;
  CHECK(h1 != config_hash_hex(other));
  other = cfg;
  other.mode = SolveMode::cm;
  CHECK(h1 != config_hash_hex(other));
  CHECK(canonical_text(cfg) == canonical_text(cfg));
}

TEST_CASE("load_scenario reports unreadable paths") {
  std::vector<std::string> errors;
  load_scenario("/nonexistent/missing.cfg", errors);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("/nonexistent/missing.cfg") != std::string::npos);
}
