// fleethfc command-line interface: field generation, single-scenario solves,
// mode comparison, Monte Carlo batteries, and SVG plot emission.
//
// Exit codes: 0 success, 1 configuration validation error, 2 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fleethfc/io.hpp"
#include "fleethfc/plots.hpp"
#include "fleethfc/runner.hpp"
#include "fleethfc/scenario.hpp"
#include "fleethfc/version.hpp"

namespace fs = std::filesystem;
using namespace fleethfc;

namespace {

constexpr const char* kConfigKeysHelp = R"(Scenario config keys (key = value, '#' comments):
  field.width_m, field.height_m      field extent in meters (positive)
  field.grid_resolution_m            mask/raster cell size, default 5
  field.generator                    gaussian | vortex (density bump shape)
  field.hotspot                      x,y,radius,intensity  (repeatable)
  field.random_hotspots              count of seeded random hotspots
  field.random_radius_min_m/.._max_m    radius range for random hotspots
  field.random_intensity_min/..max   intensity range for random hotspots
  field.depth_m                      constant depth channel for task z
  field.mask_rle                     coastline mask, runs of <count>x<0|1>
  tasks.count                        number of tasks to sample
  tasks.injection_time_s             fixed injection time override [60,90]
  tasks.injection_min_s/..max_s      sampling range when no override
  tasks.priority_min/..max           priority rank range within [1,100]
  fleet.count                        vehicle count (uniform fleet)
  fleet.speed_mps, fleet.battery_time_s   shared speed / budget
  fleet.start_xyz, fleet.goal_xyz    shared stations "x,y[,z]"
  fleet.vehicle                      id,speed,battery,sx,sy,sz,gx,gy,gz (repeatable)
  clustering.method                  kmeans | fcm-max | fcm-roulette
  clustering.restarts                seeded k-means restarts (best WCSS wins)
  clustering.fuzzifier_m/.tol/.max_iter   FCM parameters
  solver                             hfc | ga
  mode                               ncm1 | ncm2 | cm
  hfc.population_size, hfc.max_iter, hfc.screening_sample
  ga.population_size, ga.max_iter, ga.crossover_rate, ga.mutation_rate
  weights.lambda1/2/3, weights.epsilon, weights.empty_route_ceiling
  seed                               master RNG seed (all randomness flows from it)
  montecarlo.runs, montecarlo.deform_center_std_m, montecarlo.deform_task_std_m
)";

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string in_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> solver;
  std::optional<int> iters;
  std::optional<int> runs;
  std::optional<double> deform_std;
  int jobs = 1;
  std::string modes_csv = "ncm1,ncm2,cm";
};

std::string default_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FLEET_HFC_OUT"); env && *env) return env;
  return "out";
}

// Loads + validates the scenario, applying CLI overrides before the config
// hash is computed. Throws std::invalid_argument with per-key messages.
ScenarioConfig load_config(const Options& opt) {
  std::vector<std::string> errors;
  ScenarioConfig cfg = load_scenario(opt.config_path, errors);
  if (errors.empty()) {
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.iters) {
      cfg.hfc.max_iter = *opt.iters;
      cfg.ga.max_iter = *opt.iters;
    }
    if (opt.runs) cfg.montecarlo.runs = *opt.runs;
    if (opt.deform_std) cfg.montecarlo.deform_center_std_m = *opt.deform_std;
    if (opt.mode) {
      if (*opt.mode == "ncm1") cfg.mode = SolveMode::ncm1;
      else if (*opt.mode == "ncm2") cfg.mode = SolveMode::ncm2;
      else if (*opt.mode == "cm") cfg.mode = SolveMode::cm;
      else errors.push_back("mode: expected ncm1, ncm2 or cm, got '" + *opt.mode + "'");
    }
    if (opt.solver) {
      if (*opt.solver == "hfc") cfg.solver = SolverKind::hfc;
      else if (*opt.solver == "ga") cfg.solver = SolverKind::ga;
      else errors.push_back("solver: expected hfc or ga, got '" + *opt.solver + "'");
    }
    const auto more = validate_scenario(cfg);
    errors.insert(errors.end(), more.begin(), more.end());
  }
  if (!errors.empty()) {
    std::string msg = "configuration error in '" + opt.config_path + "':";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  return cfg;
}

void warn_mask_crossings(const RunResult& res) {
  if (res.mask_crossing_legs > 0) {
    std::cerr << "warning: " << res.mask_crossing_legs
              << " route leg(s) cross masked coastline cells (straight-line segments are not"
                 " mask-aware)\n";
  }
  if (res.infeasible_scenario) {
    std::cerr << "warning: scenario infeasible, some vehicle cannot reach the rendezvous within"
                 " its battery budget\n";
  }
}

void write_solve_outputs(const RunResult& res, const fs::path& dir) {
  fs::create_directories(dir);
  write_text_file((dir / "plan.json").string(), plan_json(res).dump(2) + "\n");
  write_text_file((dir / "history.csv").string(), csv::history(res.history));
  write_text_file((dir / "summary.csv").string(), csv::runs({res}));
}

int cmd_gen_field(const Options& opt) {
  const ScenarioConfig cfg = load_config(opt);
  const fs::path dir = default_out_dir(opt.out_dir);
  fs::create_directories(dir);
  const FieldModel field = build_field(cfg.field, mix_seed(cfg.seed, seeds::kField));
  write_text_file((dir / "density.csv").string(), field.density_csv());
  const TaskTable no_tasks;
  const FleetPlan no_plan;
  write_text_file((dir / "field.svg").string(), render_route_overlay(field, no_tasks, no_plan));
  std::cout << "field written to " << dir.string() << " (density.csv, field.svg)\n";
  return 0;
}

int cmd_solve(const Options& opt) {
  const ScenarioConfig cfg = load_config(opt);
  const RunResult res = run_scenario(cfg);
  warn_mask_crossings(res);
  const fs::path dir = default_out_dir(opt.out_dir);
  write_solve_outputs(res, dir);
  // Cluster assignment export, reproduced from the run's own seed streams.
  if (!res.tasks.empty()) {
    ClusterAssignment a = detail::cluster_tasks(cfg, res.tasks, res.fleet,
                                                mix_seed(cfg.seed, seeds::kCluster));
    write_text_file((dir / "assignment.csv").string(),
                    assignment_csv(a, to_string(cfg.clustering)));
  }
  std::cout << "solve " << to_string(cfg.solver) << "/" << to_string(cfg.mode) << ": cost "
            << res.total_cost << ", completed " << res.total_completed << "/"
            << res.tasks.size() << ", violation " << res.total_violation_s
            << " s, wall " << res.wall_time_s << " s\n"
            << "results in " << dir.string() << " (plan.json, history.csv, summary.csv)\n";
  return 0;
}

int cmd_compare(const Options& opt) {
  const ScenarioConfig cfg = load_config(opt);
  std::vector<SolveMode> modes;
  for (const auto& m : detail::split(opt.modes_csv, ',')) {
    if (m == "ncm1") modes.push_back(SolveMode::ncm1);
    else if (m == "ncm2") modes.push_back(SolveMode::ncm2);
    else if (m == "cm") modes.push_back(SolveMode::cm);
    else throw std::invalid_argument("modes: expected ncm1, ncm2 or cm, got '" + m + "'");
  }
  if (modes.empty()) throw std::invalid_argument("modes: at least one mode required");
  const auto results = compare_modes(cfg, modes);
  const fs::path dir = default_out_dir(opt.out_dir);
  fs::create_directories(dir);
  write_text_file((dir / "comparison.csv").string(), csv::comparison(results));
  for (const auto& res : results) {
    warn_mask_crossings(res);
    write_text_file((dir / ("plan_" + std::string(to_string(res.mode)) + ".json")).string(),
                    plan_json(res).dump(2) + "\n");
    write_text_file((dir / ("history_" + std::string(to_string(res.mode)) + ".csv")).string(),
                    csv::history(res.history));
    std::cout << to_string(res.mode) << ": cost " << res.total_cost << ", completed "
              << res.total_completed << ", violation " << res.total_violation_s << " s\n";
  }
  std::cout << "comparison table in " << (dir / "comparison.csv").string() << "\n";
  return 0;
}

int cmd_montecarlo(const Options& opt) {
  const ScenarioConfig cfg = load_config(opt);
  McParams mc;
  mc.runs = cfg.montecarlo.runs;
  mc.deform_center_std_m = cfg.montecarlo.deform_center_std_m;
  mc.deform_task_std_m = cfg.montecarlo.deform_task_std_m;
  mc.jobs = opt.jobs;
  const auto results = run_monte_carlo(cfg, mc);
  const McSummary summary = summarize_monte_carlo(results);
  const fs::path dir = default_out_dir(opt.out_dir);
  fs::create_directories(dir);
  write_text_file((dir / "runs.csv").string(), csv::runs(results));
  write_text_file((dir / "mc_summary.csv").string(), csv::mc_summary(summary));
  std::cout << "monte carlo: " << results.size() << " runs, " << summary.failures
            << " failure(s); results in " << dir.string() << " (runs.csv, mc_summary.csv)\n";
  return 0;
}

int cmd_plot(const Options& opt) {
  const ScenarioConfig cfg = load_config(opt);
  const fs::path in = opt.in_dir.empty() ? fs::path(default_out_dir(opt.out_dir)) : fs::path(opt.in_dir);
  const fs::path dir = default_out_dir(opt.out_dir);
  fs::create_directories(dir);
  int emitted = 0;
  if (fs::exists(in / "plan.json")) {
    const auto j = nlohmann::ordered_json::parse(read_text_file((in / "plan.json").string()));
    LoadedPlan loaded = plan_from_json(j);
    const FieldModel field = build_field(cfg.field, mix_seed(cfg.seed, seeds::kField));
    write_text_file((dir / "routes.svg").string(),
                    render_route_overlay(field, loaded.tasks, loaded.plan));
    ++emitted;
  }
  if (fs::exists(in / "history.csv")) {
    const auto rows = csv::parse_history(read_text_file((in / "history.csv").string()));
    write_text_file((dir / "history_cost.svg").string(), render_history_chart(rows, "cost"));
    write_text_file((dir / "history_violation.svg").string(),
                    render_history_chart(rows, "violation_s"));
    write_text_file((dir / "history_tdiff.svg").string(), render_history_chart(rows, "t_diff_s"));
    emitted += 3;
  }
  if (fs::exists(in / "runs.csv")) {
    const auto runs = csv::parse_runs(read_text_file((in / "runs.csv").string()));
    write_text_file((dir / "boxplot_cost.svg").string(), render_mc_boxplot(runs, "cost"));
    write_text_file((dir / "boxplot_time.svg").string(),
                    render_mc_boxplot(runs, "mission_time_s"));
    write_text_file((dir / "boxplot_completed.svg").string(),
                    render_mc_boxplot(runs, "completed"));
    emitted += 3;
  }
  if (emitted == 0) {
    throw std::runtime_error("plot: nothing to plot in '" + in.string() +
                             "' (expected plan.json, history.csv or runs.csv)");
  }
  std::cout << emitted << " plot(s) written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("fleethfc ") + kVersion +
               " - cooperative fleet task-assignment solver and experiment harness"};
  app.footer(kConfigKeysHelp);
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path, "scenario config file");
    if (needs_config) c->required();
    sub->add_option("--out", opt.out_dir,
                    "output directory (default: $FLEET_HFC_OUT or ./out)");
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--mode", opt.mode, "override mode: ncm1 | ncm2 | cm");
    sub->add_option("--solver", opt.solver, "override solver: hfc | ga");
    sub->add_option("--iters", opt.iters, "override solver iteration count");
    sub->add_option("--jobs", opt.jobs, "worker thread cap for batch runs");
  };

  auto* gen = app.add_subcommand("gen-field", "generate the field and export the density grid");
  add_common(gen, true);
  auto* solve = app.add_subcommand("solve", "solve one scenario, write plan + history");
  add_common(solve, true);
  auto* compare = app.add_subcommand("compare", "paired same-seed comparison across modes");
  add_common(compare, true);
  compare->add_option("--modes", opt.modes_csv, "comma-separated modes (default ncm1,ncm2,cm)");
  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo battery with field deformation");
  add_common(mc, true);
  mc->add_option("--runs", opt.runs, "override montecarlo.runs");
  mc->add_option("--deform-std", opt.deform_std, "override montecarlo.deform_center_std_m");
  auto* plot = app.add_subcommand("plot", "render SVG plots from a results directory");
  add_common(plot, true);
  plot->add_option("--in", opt.in_dir, "results directory to read (default: the --out dir)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_field(opt);
    if (solve->parsed()) return cmd_solve(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (mc->parsed()) return cmd_montecarlo(opt);
    if (plot->parsed()) return cmd_plot(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
