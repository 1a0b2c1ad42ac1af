#pragma once
// Experiment execution: single scenario runs, paired mode comparisons, and
// the Monte Carlo robustness battery with field deformation. Also owns the
// CSV/JSON result schemas shared by the CLI and the test suites.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fleethfc/clustering.hpp"
#include "fleethfc/cost.hpp"
#include "fleethfc/field.hpp"
#include "fleethfc/ga.hpp"
#include "fleethfc/hfc.hpp"
#include "fleethfc/scenario.hpp"
#include "fleethfc/tasks.hpp"

namespace fleethfc {

// Fixed salts for the independent seed streams of one scenario run.
namespace seeds {
inline constexpr std::uint64_t kField = 0xF1E1D00000000001ULL;
inline constexpr std::uint64_t kTasks = 0xF1E1D00000000002ULL;
inline constexpr std::uint64_t kCluster = 0xF1E1D00000000003ULL;
inline constexpr std::uint64_t kSolver = 0xF1E1D00000000004ULL;
inline constexpr std::uint64_t kMonteCarlo = 0xF1E1D00000000005ULL;
}  // namespace seeds

struct VehicleResult {
  int vehicle_id = 0;
  double cost = 0.0;
  double distance_m = 0.0;
  double mission_time_s = 0.0;
  double t_diff_s = 0.0;
  int completed = 0;
  double violation_s = 0.0;        // raw overtime seconds
  double violation_ratio = 0.0;    // overtime / battery budget
  double priority_sum = 0.0;
};

struct RunResult {
  SolverKind solver = SolverKind::hfc;
  SolveMode mode = SolveMode::cm;
  std::vector<VehicleResult> vehicles;
  double total_cost = 0.0;
  double total_time_s = 0.0;
  double total_t_diff_s = 0.0;
  double total_positive_t_diff_s = 0.0;
  int total_completed = 0;
  double total_violation_s = 0.0;
  double t_available_s = 0.0;  // sum of battery budgets
  std::vector<HistoryRow> history;
  FleetPlan plan;
  TaskTable tasks;  // statuses reflect the final plan
  std::vector<VehicleConfig> fleet;
  double wall_time_s = 0.0;
  std::string config_hash;
  bool infeasible_scenario = false;
  int mask_crossing_legs = 0;  // straight legs that cross masked cells
};

namespace detail {

// Straight segments are not mask-aware; count offending legs so callers can
// surface a warning.
inline int count_mask_crossings(const FieldModel& field, const FleetPlan& plan,
                                const TaskTable& tasks) {
  if (!field.has_mask()) return 0;
  const double step = field.grid_resolution_m() * 0.5;
  int crossings = 0;
  for (const Route& r : plan.routes) {
    std::vector<Vec3> pts;
    pts.push_back(r.start);
    for (int id : r.task_ids) pts.push_back(task_by_id(tasks, id).position);
    pts.push_back(r.goal);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double len = segment_distance(pts[i], pts[i + 1]);
      const int steps = std::max(1, static_cast<int>(len / step));
      bool crossed = false;
      for (int s = 0; s <= steps && !crossed; ++s) {
        const double f = static_cast<double>(s) / steps;
        const Vec3 p = pts[i] + (pts[i + 1] - pts[i]) * f;
        if (field.in_bounds(p.x, p.y) && field.masked_at(p.x, p.y)) crossed = true;
      }
      if (crossed) ++crossings;
    }
  }
  return crossings;
}

inline ClusterAssignment cluster_tasks(const ScenarioConfig& cfg, const TaskTable& tasks,
                                       const std::vector<VehicleConfig>& fleet,
                                       std::uint64_t seed) {
  const int k = static_cast<int>(fleet.size());
  ClusterAssignment a;
  if (tasks.empty()) {
    a.k = k;
    a.centers.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) a.centers[static_cast<std::size_t>(c)] = fleet[static_cast<std::size_t>(c)].start;
    return a;
  }
  switch (cfg.clustering) {
    case ClusteringMethod::kmeans:
      a = kmeans(tasks, k, mix_seed(seed, 1), 100, cfg.kmeans_restarts);
      break;
    case ClusteringMethod::fcm_max:
      a = fcm(tasks, k, mix_seed(seed, 1), cfg.fcm);
      assign_max(a);
      break;
    case ClusteringMethod::fcm_roulette:
      a = fcm(tasks, k, mix_seed(seed, 1), cfg.fcm);
      assign_roulette(a, mix_seed(seed, 2));
      break;
  }
  return apply_pairing(a, pair_clusters_to_vehicles(a, fleet));
}

inline RunResult assemble_result(const ScenarioConfig& cfg, const FieldModel& field,
                                 TaskTable tasks, const std::vector<VehicleConfig>& fleet,
                                 FleetPlan plan, std::vector<HistoryRow> history,
                                 bool infeasible, double wall_s) {
  RunResult res;
  res.solver = cfg.solver;
  res.mode = cfg.mode;
  res.history = std::move(history);
  res.fleet = fleet;
  res.wall_time_s = wall_s;
  res.config_hash = config_hash_hex(cfg);
  res.infeasible_scenario = infeasible;

  for (auto& t : tasks) t.status = TaskStatus::abandoned;
  for (const Route& r : plan.routes) {
    for (int id : r.task_ids) tasks[static_cast<std::size_t>(id)].status = TaskStatus::completed;
  }

  for (std::size_t v = 0; v < plan.routes.size(); ++v) {
    const Route& r = plan.routes[v];
    VehicleResult vr;
    vr.vehicle_id = fleet[v].id;
    vr.cost = r.cost;
    vr.distance_m = r.total_distance_m;
    vr.mission_time_s = r.mission_time_s;
    vr.t_diff_s = fleet[v].battery_time_s - r.mission_time_s;
    vr.completed = static_cast<int>(r.task_ids.size());
    vr.violation_s = r.violation_s;
    vr.violation_ratio = r.violation_s / fleet[v].battery_time_s;
    vr.priority_sum = r.priority_sum;
    res.vehicles.push_back(vr);

    res.total_cost += vr.cost;
    res.total_time_s += vr.mission_time_s;
    res.total_t_diff_s += vr.t_diff_s;
    if (vr.t_diff_s > 0) res.total_positive_t_diff_s += vr.t_diff_s;
    res.total_completed += vr.completed;
    res.total_violation_s += vr.violation_s;
    res.t_available_s += fleet[v].battery_time_s;
  }
  res.mask_crossing_legs = count_mask_crossings(field, plan, tasks);
  res.plan = std::move(plan);
  res.tasks = std::move(tasks);
  return res;
}

}  // namespace detail

// Builds the field, samples tasks, clusters them, dispatches to the
// configured solver, and assembles the result. Fully deterministic per seed.
inline RunResult run_scenario(const ScenarioConfig& cfg) {
  const auto errors = validate_scenario(cfg);
  if (!errors.empty()) {
    std::string msg = "invalid scenario config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const FieldModel field = build_field(cfg.field, mix_seed(cfg.seed, seeds::kField));
  const TaskTable tasks =
      sample_tasks(field, cfg.task_count, mix_seed(cfg.seed, seeds::kTasks), cfg.sampling);
  const auto fleet = cfg.fleet();
  const ClusterAssignment clusters =
      detail::cluster_tasks(cfg, tasks, fleet, mix_seed(cfg.seed, seeds::kCluster));

  FleetPlan best;
  std::vector<HistoryRow> history;
  bool infeasible = false;
  if (cfg.solver == SolverKind::hfc) {
    HfcParams params = cfg.hfc;
    params.seed = mix_seed(cfg.seed, seeds::kSolver);
    params.weights = cfg.weights;
    params.set_mode(cfg.mode);
    HfcResult r = run_hfc(tasks, fleet, clusters, params);
    best = std::move(r.best);
    history = std::move(r.history);
    infeasible = r.infeasible_scenario;
  } else {
    GaParams params = cfg.ga;
    params.seed = mix_seed(cfg.seed, seeds::kSolver);
    GaResult r = run_ga(tasks, fleet, clusters, params, cfg.weights);
    best = std::move(r.best);
    history = std::move(r.history);
    infeasible = r.infeasible_scenario;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::assemble_result(cfg, field, tasks, fleet, std::move(best), std::move(history),
                                 infeasible, wall);
}

// Paired mode comparison: every mode solves the identical field, task list,
// and cluster assignment (same seed throughout).
inline std::vector<RunResult> compare_modes(const ScenarioConfig& base,
                                            const std::vector<SolveMode>& modes) {
  std::vector<RunResult> results;
  results.reserve(modes.size());
  for (SolveMode m : modes) {
    ScenarioConfig cfg = base;
    cfg.mode = m;
    results.push_back(run_scenario(cfg));
  }
  return results;
}

struct McParams {
  int runs = 30;
  double deform_center_std_m = 50.0;
  double deform_task_std_m = 10.0;
  int jobs = 1;
};

// One deformed Monte Carlo trial: hotspot centers shift by zero-mean Gaussian
// noise (clipped to the field), tasks are resampled from the deformed density
// and then jittered, also Gaussian, re-drawn if they land on a masked cell.
inline RunResult run_monte_carlo_trial(const ScenarioConfig& base, int run_index,
                                       const McParams& mc) {
  const std::uint64_t run_seed =
      mix_seed(mix_seed(base.seed, seeds::kMonteCarlo), static_cast<std::uint64_t>(run_index));
  ScenarioConfig cfg = base;
  cfg.seed = run_seed;

  // Deform explicit hotspots; random ones are already resampled via the seed.
  Rng deform(mix_seed(run_seed, 0xDEF0ULL));
  for (auto& h : cfg.field.hotspots) {
    h.center.x = std::clamp(h.center.x + deform.gaussian(0.0, mc.deform_center_std_m), 0.0,
                            cfg.field.width_m);
    h.center.y = std::clamp(h.center.y + deform.gaussian(0.0, mc.deform_center_std_m), 0.0,
                            cfg.field.height_m);
  }

  const auto errors = validate_scenario(cfg);
  if (!errors.empty()) {
    throw std::invalid_argument("monte carlo trial " + std::to_string(run_index) +
                                ": deformed config invalid: " + errors.front());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const FieldModel field = build_field(cfg.field, mix_seed(cfg.seed, seeds::kField));
  TaskTable tasks =
      sample_tasks(field, cfg.task_count, mix_seed(cfg.seed, seeds::kTasks), cfg.sampling);
  if (mc.deform_task_std_m > 0.0) {
    Rng jitter(mix_seed(run_seed, 0xDEF1ULL));
    for (auto& t : tasks) {
      for (int attempt = 0; attempt < 100; ++attempt) {
        const double x =
            std::clamp(t.position.x + jitter.gaussian(0.0, mc.deform_task_std_m), 0.0,
                       field.width_m());
        const double y =
            std::clamp(t.position.y + jitter.gaussian(0.0, mc.deform_task_std_m), 0.0,
                       field.height_m());
        if (!field.masked_at(x, y)) {
          t.position.x = x;
          t.position.y = y;
          break;
        }
      }
    }
  }
  const auto fleet = cfg.fleet();
  const ClusterAssignment clusters =
      detail::cluster_tasks(cfg, tasks, fleet, mix_seed(cfg.seed, seeds::kCluster));
  FleetPlan best;
  std::vector<HistoryRow> history;
  bool infeasible = false;
  if (cfg.solver == SolverKind::hfc) {
    HfcParams params = cfg.hfc;
    params.seed = mix_seed(cfg.seed, seeds::kSolver);
    params.weights = cfg.weights;
    params.set_mode(cfg.mode);
    HfcResult r = run_hfc(tasks, fleet, clusters, params);
    best = std::move(r.best);
    history = std::move(r.history);
    infeasible = r.infeasible_scenario;
  } else {
    GaParams params = cfg.ga;
    params.seed = mix_seed(cfg.seed, seeds::kSolver);
    GaResult r = run_ga(tasks, fleet, clusters, params, cfg.weights);
    best = std::move(r.best);
    history = std::move(r.history);
    infeasible = r.infeasible_scenario;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::assemble_result(cfg, field, std::move(tasks), fleet, std::move(best),
                                 std::move(history), infeasible, wall);
}

// Runs trials 0..runs-1, optionally across worker threads. Each trial owns an
// RNG stream derived from (seed, run index), so parallel and serial execution
// produce identical results.
inline std::vector<RunResult> run_monte_carlo(const ScenarioConfig& base, const McParams& mc) {
  if (mc.runs < 1) throw std::invalid_argument("run_monte_carlo: runs must be >= 1");
  if (mc.deform_center_std_m < 0 || mc.deform_task_std_m < 0) {
    throw std::invalid_argument("run_monte_carlo: deformation std must be >= 0");
  }
  std::vector<RunResult> results(static_cast<std::size_t>(mc.runs));
  const int jobs = std::max(1, mc.jobs);
  if (jobs == 1) {
    for (int i = 0; i < mc.runs; ++i) results[static_cast<std::size_t>(i)] = run_monte_carlo_trial(base, i, mc);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        int i = 0;
        while ((i = next.fetch_add(1)) < mc.runs) {
          results[static_cast<std::size_t>(i)] = run_monte_carlo_trial(base, i, mc);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// ---- summary statistics -------------------------------------------------

struct BoxStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double lo = 0.0;  // min
  double hi = 0.0;  // max
  int outliers = 0; // beyond 1.5 IQR whiskers
};

inline BoxStats box_stats(std::vector<double> v) {
  BoxStats s;
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * (static_cast<double>(v.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
  };
  s.median = quantile(0.5);
  s.q1 = quantile(0.25);
  s.q3 = quantile(0.75);
  s.lo = v.front();
  s.hi = v.back();
  const double iqr = s.q3 - s.q1;
  for (double x : v) {
    if (x < s.q1 - 1.5 * iqr || x > s.q3 + 1.5 * iqr) ++s.outliers;
  }
  return s;
}

struct McSummary {
  int runs = 0;
  int failures = 0;  // runs where any vehicle ends with violation > 0
  // metric -> vehicle -> stats; metrics fixed as below
  std::vector<std::string> metrics{"cost", "distance_m", "mission_time_s",
                                   "t_diff_s", "completed", "violation_s"};
  std::vector<std::vector<BoxStats>> per_vehicle;  // [metric][vehicle]
};

inline double metric_value(const VehicleResult& v, const std::string& metric) {
  if (metric == "cost") return v.cost;
  if (metric == "distance_m") return v.distance_m;
  if (metric == "mission_time_s") return v.mission_time_s;
  if (metric == "t_diff_s") return v.t_diff_s;
  if (metric == "completed") return static_cast<double>(v.completed);
  if (metric == "violation_s") return v.violation_s;
  throw std::invalid_argument("unknown metric " + metric);
}

inline McSummary summarize_monte_carlo(const std::vector<RunResult>& runs) {
  McSummary s;
  s.runs = static_cast<int>(runs.size());
  if (runs.empty()) return s;
  const std::size_t k = runs.front().vehicles.size();
  for (const auto& r : runs) {
    bool failed = false;
    for (const auto& v : r.vehicles) {
      if (v.violation_s > 0.0) failed = true;
    }
    if (failed) ++s.failures;
  }
  for (const auto& metric : s.metrics) {
    std::vector<BoxStats> per_v;
    for (std::size_t v = 0; v < k; ++v) {
      std::vector<double> vals;
      vals.reserve(runs.size());
      for (const auto& r : runs) vals.push_back(metric_value(r.vehicles[v], metric));
      per_v.push_back(box_stats(std::move(vals)));
    }
    s.per_vehicle.push_back(std::move(per_v));
  }
  return s;
}

// ---- CSV / JSON schemas ---------------------------------------------------

namespace csv {

inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// iter,vehicle,cost,t_diff_s,violation_s,completed
inline std::string history(const std::vector<HistoryRow>& rows) {
  std::string out = "iter,vehicle,cost,t_diff_s,violation_s,completed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.iter) + "," + std::to_string(r.vehicle) + "," + fmt(r.cost) + "," +
           fmt(r.t_diff_s) + "," + fmt(r.violation_s) + "," + std::to_string(r.completed) + "\n";
  }
  return out;
}

// run,vehicle,cost,mission_time_s,t_diff_s,completed,violation_s
inline std::string runs(const std::vector<RunResult>& results) {
  std::string out = "run,vehicle,cost,mission_time_s,t_diff_s,completed,violation_s\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& v : results[i].vehicles) {
      out += std::to_string(i) + "," + std::to_string(v.vehicle_id) + "," + fmt(v.cost) + "," +
             fmt(v.mission_time_s) + "," + fmt(v.t_diff_s) + "," + std::to_string(v.completed) +
             "," + fmt(v.violation_s) + "\n";
    }
  }
  return out;
}

// Table-style mode comparison plus derived deltas relative to the first row.
inline std::string comparison(const std::vector<RunResult>& results) {
  std::string out =
      "mode,ordering,screening,cooperation,vehicle,cost,mission_time_s,t_diff_s,"
      "completed,violation_s,total_cost,total_time_s,total_t_diff_s,total_completed,"
      "cost_reduction_pct,completed_delta\n";
  const double base_cost = results.empty() ? 0.0 : results.front().total_cost;
  const int base_completed = results.empty() ? 0 : results.front().total_completed;
  for (const auto& r : results) {
    const bool screening = r.mode != SolveMode::ncm1;
    const bool cooperation = r.mode == SolveMode::cm;
    const double reduction =
        base_cost > 0.0 ? (base_cost - r.total_cost) / base_cost * 100.0 : 0.0;
    for (const auto& v : r.vehicles) {
      out += std::string(to_string(r.mode)) + ",on," + (screening ? "on" : "off") + "," +
             (cooperation ? "on" : "off") + "," + std::to_string(v.vehicle_id) + "," +
             fmt(v.cost) + "," + fmt(v.mission_time_s) + "," + fmt(v.t_diff_s) + "," +
             std::to_string(v.completed) + "," + fmt(v.violation_s) + "," + fmt(r.total_cost) +
             "," + fmt(r.total_time_s) + "," + fmt(r.total_t_diff_s) + "," +
             std::to_string(r.total_completed) + "," + fmt(reduction) + "," +
             std::to_string(r.total_completed - base_completed) + "\n";
    }
  }
  return out;
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<HistoryRow> parse_history(const std::string& text) {
  std::vector<HistoryRow> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 6) throw std::runtime_error("history csv: bad row '" + line + "'");
    HistoryRow r;
    r.iter = std::stoi(f[0]);
    r.vehicle = std::stoi(f[1]);
    r.cost = std::stod(f[2]);
    r.t_diff_s = std::stod(f[3]);
    r.violation_s = std::stod(f[4]);
    r.completed = std::stoi(f[5]);
    rows.push_back(r);
  }
  return rows;
}

// Rebuilds minimal per-run vehicle metrics from runs.csv (enough for the
// summary statistics and boxplots).
inline std::vector<RunResult> parse_runs(const std::string& text) {
  std::vector<RunResult> runs;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 7) throw std::runtime_error("runs csv: bad row '" + line + "'");
    const std::size_t run = static_cast<std::size_t>(std::stoul(f[0]));
    if (run >= runs.size()) runs.resize(run + 1);
    VehicleResult v;
    v.vehicle_id = std::stoi(f[1]);
    v.cost = std::stod(f[2]);
    v.mission_time_s = std::stod(f[3]);
    v.t_diff_s = std::stod(f[4]);
    v.completed = std::stoi(f[5]);
    v.violation_s = std::stod(f[6]);
    runs[run].vehicles.push_back(v);
  }
  return runs;
}

// metric,vehicle,median,q1,q3,min,max,outliers
inline std::string mc_summary(const McSummary& s) {
  std::string out = "metric,vehicle,median,q1,q3,min,max,outliers\n";
  for (std::size_t m = 0; m < s.metrics.size(); ++m) {
    for (std::size_t v = 0; v < s.per_vehicle[m].size(); ++v) {
      const BoxStats& b = s.per_vehicle[m][v];
      out += s.metrics[m] + "," + std::to_string(v) + "," + fmt(b.median) + "," + fmt(b.q1) +
             "," + fmt(b.q3) + "," + fmt(b.lo) + "," + fmt(b.hi) + "," +
             std::to_string(b.outliers) + "\n";
    }
  }
  out += "failures,all," + std::to_string(s.failures) + ",,,,,\n";
  return out;
}

}  // namespace csv

// Fleet plan with per-route cost breakdown, the task table, and the fleet;
// everything needed to reload and re-verify the cached metrics.
inline nlohmann::ordered_json plan_json(const RunResult& res) {
  nlohmann::ordered_json j;
  j["config_hash"] = res.config_hash;
  j["version"] = kVersion;
  j["solver"] = to_string(res.solver);
  j["mode"] = to_string(res.mode);
  j["infeasible_scenario"] = res.infeasible_scenario;
  j["mask_crossing_legs"] = res.mask_crossing_legs;
  j["totals"] = {{"cost", res.total_cost},
                 {"mission_time_s", res.total_time_s},
                 {"t_diff_s", res.total_t_diff_s},
                 {"positive_t_diff_s", res.total_positive_t_diff_s},
                 {"completed", res.total_completed},
                 {"violation_s", res.total_violation_s},
                 {"t_available_s", res.t_available_s}};
  j["routes"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < res.plan.routes.size(); ++v) {
    const Route& r = res.plan.routes[v];
    nlohmann::ordered_json jr;
    jr["vehicle_id"] = r.vehicle_id;
    jr["tasks"] = r.task_ids;
    jr["start"] = {r.start.x, r.start.y, r.start.z};
    jr["goal"] = {r.goal.x, r.goal.y, r.goal.z};
    jr["distance_m"] = r.total_distance_m;
    jr["mission_time_s"] = r.mission_time_s;
    jr["t_diff_s"] = res.vehicles[v].t_diff_s;
    jr["violation_s"] = r.violation_s;
    jr["priority_sum"] = r.priority_sum;
    jr["cost"] = r.cost;
    j["routes"].push_back(jr);
  }
  j["abandoned"] = res.plan.abandoned;
  j["fleet"] = nlohmann::ordered_json::array();
  for (const auto& v : res.fleet) {
    j["fleet"].push_back({{"id", v.id},
                          {"speed_mps", v.speed_mps},
                          {"battery_time_s", v.battery_time_s},
                          {"start", {v.start.x, v.start.y, v.start.z}},
                          {"goal", {v.goal.x, v.goal.y, v.goal.z}}});
  }
  j["tasks"] = nlohmann::ordered_json::array();
  for (const auto& t : res.tasks) {
    j["tasks"].push_back({{"id", t.id},
                          {"position", {t.position.x, t.position.y, t.position.z}},
                          {"priority", t.priority},
                          {"injection_time_s", t.injection_time_s},
                          {"status", to_string(t.status)}});
  }
  return j;
}

struct LoadedPlan {
  FleetPlan plan;
  TaskTable tasks;
  std::vector<VehicleConfig> fleet;
};

inline LoadedPlan plan_from_json(const nlohmann::ordered_json& j) {
  LoadedPlan out;
  for (const auto& jt : j.at("tasks")) {
    TaskSpot t;
    t.id = jt.at("id").get<int>();
    const auto& p = jt.at("position");
    t.position = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    t.priority = jt.at("priority").get<int>();
    t.injection_time_s = jt.at("injection_time_s").get<double>();
    const std::string st = jt.at("status").get<std::string>();
    t.status = st == "completed"  ? TaskStatus::completed
               : st == "abandoned" ? TaskStatus::abandoned
               : st == "assigned"  ? TaskStatus::assigned
                                   : TaskStatus::pending;
    out.tasks.push_back(t);
  }
  for (const auto& jv : j.at("fleet")) {
    VehicleConfig v;
    v.id = jv.at("id").get<int>();
    v.speed_mps = jv.at("speed_mps").get<double>();
    v.battery_time_s = jv.at("battery_time_s").get<double>();
    const auto& s = jv.at("start");
    const auto& g = jv.at("goal");
    v.start = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};
    v.goal = {g[0].get<double>(), g[1].get<double>(), g[2].get<double>()};
    out.fleet.push_back(v);
  }
  for (const auto& jr : j.at("routes")) {
    Route r;
    r.vehicle_id = jr.at("vehicle_id").get<int>();
    r.task_ids = jr.at("tasks").get<std::vector<int>>();
    const auto& s = jr.at("start");
    const auto& g = jr.at("goal");
    r.start = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};
    r.goal = {g[0].get<double>(), g[1].get<double>(), g[2].get<double>()};
    r.total_distance_m = jr.at("distance_m").get<double>();
    r.mission_time_s = jr.at("mission_time_s").get<double>();
    r.violation_s = jr.at("violation_s").get<double>();
    r.priority_sum = jr.at("priority_sum").get<double>();
    r.cost = jr.at("cost").get<double>();
    out.plan.routes.push_back(std::move(r));
  }
  out.plan.abandoned = j.at("abandoned").get<std::vector<int>>();
  out.plan.infeasible_scenario = j.at("infeasible_scenario").get<bool>();
  for (const auto& r : out.plan.routes) {
    Route tmp = r;  // caches already set
    out.plan.total_cost += tmp.cost;
  }
  return out;
}

}  // namespace fleethfc
