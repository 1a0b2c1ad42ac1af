#pragma once
// Scenario configuration: a flat key = value text format describing the
// field, the task sampling, the fleet, the clustering policy, the solver and
// its parameters, and the Monte Carlo battery. Unknown keys and out-of-range
// values are collected as per-key validation errors rather than thrown one
// at a time.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fleethfc/clustering.hpp"
#include "fleethfc/field.hpp"
#include "fleethfc/ga.hpp"
#include "fleethfc/hfc.hpp"
#include "fleethfc/version.hpp"

namespace fleethfc {

enum class ClusteringMethod { kmeans, fcm_max, fcm_roulette };
enum class SolverKind { hfc, ga };

inline const char* to_string(ClusteringMethod m) {
  switch (m) {
    case ClusteringMethod::kmeans: return "kmeans";
    case ClusteringMethod::fcm_max: return "fcm-max";
    case ClusteringMethod::fcm_roulette: return "fcm-roulette";
  }
  return "?";
}

inline const char* to_string(SolverKind s) {
  return s == SolverKind::hfc ? "hfc" : "ga";
}

struct MonteCarloSpec {
  int runs = 30;
  double deform_center_std_m = 50.0;
  double deform_task_std_m = 10.0;
};

struct ScenarioConfig {
  FieldSpec field;

  int task_count = 90;
  TaskSamplingParams sampling;

  int fleet_count = 3;
  double speed_mps = 1.0;
  double battery_time_s = 3600.0;
  Vec3 start_xyz;
  Vec3 goal_xyz;
  std::vector<VehicleConfig> explicit_vehicles;  // overrides the uniform fleet when nonempty

  ClusteringMethod clustering = ClusteringMethod::kmeans;
  int kmeans_restarts = 10;
  FcmParams fcm;

  SolverKind solver = SolverKind::hfc;
  SolveMode mode = SolveMode::cm;

  HfcParams hfc;
  GaParams ga;
  CostWeights weights;
  MonteCarloSpec montecarlo;

  std::uint64_t seed = 42;

  std::vector<VehicleConfig> fleet() const {
    if (!explicit_vehicles.empty()) return explicit_vehicles;
    std::vector<VehicleConfig> v(static_cast<std::size_t>(fleet_count));
    for (int i = 0; i < fleet_count; ++i) {
      v[static_cast<std::size_t>(i)] = {i, speed_mps, battery_time_s, start_xyz, goal_xyz};
    }
    return v;
  }
};

namespace detail {

inline bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline bool parse_int(const std::string& s, long long& out) {
  try {
    std::size_t pos = 0;
    out = std::stoll(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(trim(part));
  return parts;
}

inline bool parse_vec3(const std::string& s, Vec3& out) {
  const auto parts = split(s, ',');
  if (parts.size() != 2 && parts.size() != 3) return false;
  double x = 0, y = 0, z = 0;
  if (!parse_double(parts[0], x) || !parse_double(parts[1], y)) return false;
  if (parts.size() == 3 && !parse_double(parts[2], z)) return false;
  out = {x, y, z};
  return true;
}

}  // namespace detail

// Parses the key = value scenario text. All problems (syntax, unknown keys,
// range violations) are appended to `errors`, each naming the offending key.
inline ScenarioConfig parse_scenario(const std::string& text, std::vector<std::string>& errors) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto fail = [&](const std::string& key, const std::string& why) {
    errors.push_back(key + ": " + why);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));

    auto as_double = [&](double& out) {
      if (!detail::parse_double(value, out)) fail(key, "expected a number, got '" + value + "'");
    };
    auto as_int = [&](int& out) {
      long long v = 0;
      if (!detail::parse_int(value, v)) {
        fail(key, "expected an integer, got '" + value + "'");
      } else {
        out = static_cast<int>(v);
      }
    };
    auto as_vec3 = [&](Vec3& out) {
      if (!detail::parse_vec3(value, out)) fail(key, "expected x,y[,z], got '" + value + "'");
    };

    if (key == "field.width_m") as_double(cfg.field.width_m);
    else if (key == "field.height_m") as_double(cfg.field.height_m);
    else if (key == "field.grid_resolution_m") as_double(cfg.field.grid_resolution_m);
    else if (key == "field.generator") {
      if (value == "gaussian") cfg.field.generator = FieldGenerator::gaussian;
      else if (value == "vortex") cfg.field.generator = FieldGenerator::vortex;
      else fail(key, "expected gaussian or vortex, got '" + value + "'");
    } else if (key == "field.hotspot") {
      const auto parts = detail::split(value, ',');
      DensityCenter h;
      bool ok = parts.size() == 4;
      ok = ok && detail::parse_double(parts[0], h.center.x);
      ok = ok && detail::parse_double(parts[1], h.center.y);
      ok = ok && detail::parse_double(parts[2], h.radius_m);
      ok = ok && detail::parse_double(parts[3], h.intensity);
      if (ok) cfg.field.hotspots.push_back(h);
      else fail(key, "expected x,y,radius,intensity, got '" + value + "'");
    } else if (key == "field.random_hotspots") as_int(cfg.field.random_hotspots);
    else if (key == "field.random_radius_min_m") as_double(cfg.field.random_radius_min_m);
    else if (key == "field.random_radius_max_m") as_double(cfg.field.random_radius_max_m);
    else if (key == "field.random_intensity_min") as_double(cfg.field.random_intensity_min);
    else if (key == "field.random_intensity_max") as_double(cfg.field.random_intensity_max);
    else if (key == "field.depth_m") as_double(cfg.field.depth_m);
    else if (key == "field.mask_rle") cfg.field.mask_rle = value;
    else if (key == "tasks.count") as_int(cfg.task_count);
    else if (key == "tasks.injection_time_s") {
      double v = 0;
      as_double(v);
      cfg.sampling.injection_fixed_s = v;
    } else if (key == "tasks.injection_min_s") as_double(cfg.sampling.injection_min_s);
    else if (key == "tasks.injection_max_s") as_double(cfg.sampling.injection_max_s);
    else if (key == "tasks.priority_min") as_int(cfg.sampling.priority_min);
    else if (key == "tasks.priority_max") as_int(cfg.sampling.priority_max);
    else if (key == "fleet.count") as_int(cfg.fleet_count);
    else if (key == "fleet.speed_mps") as_double(cfg.speed_mps);
    else if (key == "fleet.battery_time_s") as_double(cfg.battery_time_s);
    else if (key == "fleet.start_xyz") as_vec3(cfg.start_xyz);
    else if (key == "fleet.goal_xyz") as_vec3(cfg.goal_xyz);
    else if (key == "fleet.vehicle") {
      const auto parts = detail::split(value, ',');
      bool ok = parts.size() == 9;
      VehicleConfig vc;
      long long id = 0;
      ok = ok && detail::parse_int(parts[0], id);
      ok = ok && detail::parse_double(parts[1], vc.speed_mps);
      ok = ok && detail::parse_double(parts[2], vc.battery_time_s);
      ok = ok && detail::parse_double(parts[3], vc.start.x);
      ok = ok && detail::parse_double(parts[4], vc.start.y);
      ok = ok && detail::parse_double(parts[5], vc.start.z);
      ok = ok && detail::parse_double(parts[6], vc.goal.x);
      ok = ok && detail::parse_double(parts[7], vc.goal.y);
      ok = ok && detail::parse_double(parts[8], vc.goal.z);
      if (ok) {
        vc.id = static_cast<int>(id);
        cfg.explicit_vehicles.push_back(vc);
      } else {
        fail(key, "expected id,speed,battery,sx,sy,sz,gx,gy,gz, got '" + value + "'");
      }
    } else if (key == "clustering.method") {
      if (value == "kmeans") cfg.clustering = ClusteringMethod::kmeans;
      else if (value == "fcm-max") cfg.clustering = ClusteringMethod::fcm_max;
      else if (value == "fcm-roulette") cfg.clustering = ClusteringMethod::fcm_roulette;
      else fail(key, "expected kmeans, fcm-max or fcm-roulette, got '" + value + "'");
    } else if (key == "clustering.restarts") as_int(cfg.kmeans_restarts);
    else if (key == "clustering.fuzzifier_m") as_double(cfg.fcm.fuzzifier_m);
    else if (key == "clustering.tol") as_double(cfg.fcm.tol);
    else if (key == "clustering.max_iter") as_int(cfg.fcm.max_iter);
    else if (key == "solver") {
      if (value == "hfc") cfg.solver = SolverKind::hfc;
      else if (value == "ga") cfg.solver = SolverKind::ga;
      else fail(key, "expected hfc or ga, got '" + value + "'");
    } else if (key == "mode") {
      if (value == "ncm1") cfg.mode = SolveMode::ncm1;
      else if (value == "ncm2") cfg.mode = SolveMode::ncm2;
      else if (value == "cm") cfg.mode = SolveMode::cm;
      else fail(key, "expected ncm1, ncm2 or cm, got '" + value + "'");
    } else if (key == "hfc.population_size") as_int(cfg.hfc.population_size);
    else if (key == "hfc.max_iter") as_int(cfg.hfc.max_iter);
    else if (key == "hfc.screening_sample") as_int(cfg.hfc.screening_sample);
    else if (key == "ga.population_size") as_int(cfg.ga.population_size);
    else if (key == "ga.max_iter") as_int(cfg.ga.max_iter);
    else if (key == "ga.crossover_rate") as_double(cfg.ga.crossover_rate);
    else if (key == "ga.mutation_rate") as_double(cfg.ga.mutation_rate);
    else if (key == "weights.lambda1") as_double(cfg.weights.lambda1);
    else if (key == "weights.lambda2") as_double(cfg.weights.lambda2);
    else if (key == "weights.lambda3") as_double(cfg.weights.lambda3);
    else if (key == "weights.epsilon") as_double(cfg.weights.epsilon);
    else if (key == "weights.empty_route_ceiling") as_double(cfg.weights.empty_route_priority_ceiling);
    else if (key == "seed") {
      long long v = 0;
      if (!detail::parse_int(value, v) || v < 0) fail(key, "expected a nonnegative integer");
      else cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "montecarlo.runs") as_int(cfg.montecarlo.runs);
    else if (key == "montecarlo.deform_center_std_m") as_double(cfg.montecarlo.deform_center_std_m);
    else if (key == "montecarlo.deform_task_std_m") as_double(cfg.montecarlo.deform_task_std_m);
    else fail(key, "unknown key");
  }
  return cfg;
}

// Range/consistency validation. Returns the error list; empty means valid.
inline std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const std::string& key, const std::string& why) {
    if (!ok) errors.push_back(key + ": " + why);
  };
  require(cfg.field.width_m > 0, "field.width_m", "must be positive");
  require(cfg.field.height_m > 0, "field.height_m", "must be positive");
  require(cfg.field.grid_resolution_m > 0, "field.grid_resolution_m", "must be positive");
  require(cfg.field.random_hotspots >= 0, "field.random_hotspots", "must be >= 0");
  for (const auto& h : cfg.field.hotspots) {
    require(h.radius_m > 0, "field.hotspot", "radius must be positive");
    require(h.intensity > 0 && h.intensity <= 1, "field.hotspot", "intensity must be in (0, 1]");
    require(h.center.x >= 0 && h.center.x <= cfg.field.width_m && h.center.y >= 0 &&
                h.center.y <= cfg.field.height_m,
            "field.hotspot", "center must lie inside the field");
  }
  require(cfg.task_count >= 0, "tasks.count", "must be >= 0");
  require(cfg.sampling.priority_min >= 1 && cfg.sampling.priority_max <= 100 &&
              cfg.sampling.priority_min <= cfg.sampling.priority_max,
          "tasks.priority_min/max", "must satisfy 1 <= min <= max <= 100");
  require(cfg.sampling.injection_min_s >= 60.0 && cfg.sampling.injection_max_s <= 90.0 &&
              cfg.sampling.injection_min_s <= cfg.sampling.injection_max_s,
          "tasks.injection_min_s/max_s", "must satisfy 60 <= min <= max <= 90");
  if (cfg.sampling.injection_fixed_s) {
    require(*cfg.sampling.injection_fixed_s >= 60.0 && *cfg.sampling.injection_fixed_s <= 90.0,
            "tasks.injection_time_s", "must be in [60, 90]");
  }
  const auto fleet = cfg.fleet();
  require(!fleet.empty(), "fleet.count", "must be >= 1");
  for (const auto& v : fleet) {
    require(v.speed_mps > 0, "fleet.speed_mps", "must be positive");
    require(v.battery_time_s > 0, "fleet.battery_time_s", "must be positive");
  }
  require(cfg.task_count == 0 || cfg.task_count >= static_cast<int>(fleet.size()), "tasks.count",
          "must be 0 or >= fleet size (clustering needs at least one task per vehicle)");
  require(cfg.kmeans_restarts >= 1, "clustering.restarts", "must be >= 1");
  require(cfg.fcm.fuzzifier_m > 1.0, "clustering.fuzzifier_m", "must be > 1");
  require(cfg.fcm.tol > 0.0, "clustering.tol", "must be positive");
  require(cfg.fcm.max_iter >= 1, "clustering.max_iter", "must be >= 1");
  require(cfg.hfc.population_size >= 2, "hfc.population_size", "must be >= 2");
  require(cfg.hfc.max_iter >= 1, "hfc.max_iter", "must be >= 1");
  if (cfg.mode != SolveMode::ncm1 && cfg.solver == SolverKind::hfc) {
    require(cfg.hfc.screening_sample >= 1, "hfc.screening_sample",
            "must be >= 1 when screening is enabled");
    require(static_cast<double>(cfg.hfc.screening_sample) <= 0.01 * cfg.hfc.population_size,
            "hfc.screening_sample", "must not exceed 1% of hfc.population_size");
  }
  require(cfg.ga.population_size >= 2, "ga.population_size", "must be >= 2");
  require(cfg.ga.max_iter >= 1, "ga.max_iter", "must be >= 1");
  require(cfg.ga.crossover_rate >= 0 && cfg.ga.crossover_rate <= 1, "ga.crossover_rate",
          "must be in [0, 1]");
  require(cfg.ga.mutation_rate >= 0 && cfg.ga.mutation_rate <= 1, "ga.mutation_rate",
          "must be in [0, 1]");
  require(cfg.weights.lambda1 >= 0 && cfg.weights.lambda2 >= 0 && cfg.weights.lambda3 >= 0 &&
              cfg.weights.epsilon >= 0,
          "weights", "all weights must be >= 0");
  require(cfg.montecarlo.runs >= 1, "montecarlo.runs", "must be >= 1");
  require(cfg.montecarlo.deform_center_std_m >= 0, "montecarlo.deform_center_std_m",
          "must be >= 0");
  require(cfg.montecarlo.deform_task_std_m >= 0, "montecarlo.deform_task_std_m", "must be >= 0");
  return errors;
}

inline ScenarioConfig load_scenario(const std::string& path, std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("config: cannot read '" + path + "'");
    return {};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), errors);
}

// Canonical serialization of the effective configuration. Stable key order,
// fixed formatting; the config hash is computed over this text.
inline std::string canonical_text(const ScenarioConfig& cfg) {
  std::string out;
  char buf[160];
  auto kv = [&](const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += "\n";
  };
  auto kvd = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    kv(key, buf);
  };
  auto kvi = [&](const char* key, long long v) { kv(key, std::to_string(v)); };

  kvd("field.width_m", cfg.field.width_m);
  kvd("field.height_m", cfg.field.height_m);
  kvd("field.grid_resolution_m", cfg.field.grid_resolution_m);
  kv("field.generator", cfg.field.generator == FieldGenerator::gaussian ? "gaussian" : "vortex");
  for (const auto& h : cfg.field.hotspots) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g", h.center.x, h.center.y, h.radius_m,
                  h.intensity);
    kv("field.hotspot", buf);
  }
  kvi("field.random_hotspots", cfg.field.random_hotspots);
  kvd("field.random_radius_min_m", cfg.field.random_radius_min_m);
  kvd("field.random_radius_max_m", cfg.field.random_radius_max_m);
  kvd("field.random_intensity_min", cfg.field.random_intensity_min);
  kvd("field.random_intensity_max", cfg.field.random_intensity_max);
  kvd("field.depth_m", cfg.field.depth_m);
  kv("field.mask_rle", cfg.field.mask_rle);
  kvi("tasks.count", cfg.task_count);
  if (cfg.sampling.injection_fixed_s) kvd("tasks.injection_time_s", *cfg.sampling.injection_fixed_s);
  kvd("tasks.injection_min_s", cfg.sampling.injection_min_s);
  kvd("tasks.injection_max_s", cfg.sampling.injection_max_s);
  kvi("tasks.priority_min", cfg.sampling.priority_min);
  kvi("tasks.priority_max", cfg.sampling.priority_max);
  for (const auto& v : cfg.fleet()) {
    std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g", v.id,
                  v.speed_mps, v.battery_time_s, v.start.x, v.start.y, v.start.z, v.goal.x,
                  v.goal.y, v.goal.z);
    kv("fleet.vehicle", buf);
  }
  kv("clustering.method", to_string(cfg.clustering));
  kvi("clustering.restarts", cfg.kmeans_restarts);
  kvd("clustering.fuzzifier_m", cfg.fcm.fuzzifier_m);
  kvd("clustering.tol", cfg.fcm.tol);
  kvi("clustering.max_iter", cfg.fcm.max_iter);
  kv("solver", to_string(cfg.solver));
  kv("mode", to_string(cfg.mode));
  kvi("hfc.population_size", cfg.hfc.population_size);
  kvi("hfc.max_iter", cfg.hfc.max_iter);
  kvi("hfc.screening_sample", cfg.hfc.screening_sample);
  kvi("ga.population_size", cfg.ga.population_size);
  kvi("ga.max_iter", cfg.ga.max_iter);
  kvd("ga.crossover_rate", cfg.ga.crossover_rate);
  kvd("ga.mutation_rate", cfg.ga.mutation_rate);
  kvd("weights.lambda1", cfg.weights.lambda1);
  kvd("weights.lambda2", cfg.weights.lambda2);
  kvd("weights.lambda3", cfg.weights.lambda3);
  kvd("weights.epsilon", cfg.weights.epsilon);
  kvd("weights.empty_route_ceiling", cfg.weights.empty_route_priority_ceiling);
  kvi("seed", static_cast<long long>(cfg.seed));
  kvi("montecarlo.runs", cfg.montecarlo.runs);
  kvd("montecarlo.deform_center_std_m", cfg.montecarlo.deform_center_std_m);
  kvd("montecarlo.deform_task_std_m", cfg.montecarlo.deform_task_std_m);
  return out;
}

// FNV-1a over the canonical text plus the library version, so a hash pins
// both the configuration and the code that produced a result.
inline std::string config_hash_hex(const ScenarioConfig& cfg) {
  const std::string text = canonical_text(cfg) + "\nversion = " + kVersion;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fleethfc
