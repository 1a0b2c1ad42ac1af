#pragma once
// The HFC evolutionary loop. Each individual is a full fleet plan over a
// shared cluster assignment. Per iteration:
//   ordering    - one ordering pass per route per individual; a pass makes
//                 route-size length-gated mutation attempts, so an iteration
//                 costs O(k N n) attempts
//   screening   - a random sample of nSc individuals has its over-budget
//                 routes screened down to feasibility
//   cooperation - individuals with abandoned tasks and residual battery time
//                 adopt nearest abandoned tasks back into routes
// The incumbent best (lowest total cost) is carried unconditionally, so the
// best-so-far cost trace is non-increasing. Each individual owns an RNG
// substream derived from (seed, individual index), which keeps runs
// reproducible independent of evaluation order.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleethfc/clustering.hpp"
#include "fleethfc/cooperation.hpp"
#include "fleethfc/cost.hpp"
#include "fleethfc/ordering.hpp"
#include "fleethfc/rng.hpp"
#include "fleethfc/screening.hpp"

namespace fleethfc {

enum class SolveMode { ncm1, ncm2, cm };

inline const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::ncm1: return "ncm1";
    case SolveMode::ncm2: return "ncm2";
    case SolveMode::cm: return "cm";
  }
  return "?";
}

struct HfcParams {
  int population_size = 200;
  int max_iter = 150;
  int screening_sample = 2;  // nSc, at most 1% of the population
  bool ordering_on = true;
  bool screening_on = true;
  bool cooperation_on = true;
  std::uint64_t seed = 42;
  CostWeights weights;
  // Test hook: re-verify plan exclusivity/coverage after every operator
  // application. Expensive; off by default.
  bool paranoid_checks = false;

  void set_mode(SolveMode mode) {
    ordering_on = true;
    screening_on = mode != SolveMode::ncm1;
    cooperation_on = mode == SolveMode::cm;
  }
};

inline void validate(const HfcParams& p) {
  if (p.population_size < 2) throw std::invalid_argument("hfc: population_size must be >= 2");
  if (p.max_iter < 1) throw std::invalid_argument("hfc: max_iter must be >= 1");
  if (p.screening_on) {
    if (p.screening_sample < 1) {
      throw std::invalid_argument("hfc: screening_sample must be >= 1 when screening is on");
    }
    if (static_cast<double>(p.screening_sample) > 0.01 * p.population_size) {
      throw std::invalid_argument(
          "hfc: screening_sample must not exceed 1% of population_size (nSc <= 0.01 N)");
    }
  }
}

struct HistoryRow {
  int iter = 0;
  int vehicle = 0;
  double cost = 0.0;
  double t_diff_s = 0.0;
  double violation_s = 0.0;
  int completed = 0;
};

struct Population {
  std::vector<FleetPlan> individuals;
  FleetPlan best;
  int iteration = 0;
};

struct HfcResult {
  FleetPlan best;
  std::vector<HistoryRow> history;
  bool infeasible_scenario = false;
};

// Per-iteration observer, invoked after each completed iteration.
using HfcObserver = std::function<void(int iter, const Population&)>;

namespace detail {

inline constexpr std::uint64_t kInitSaltBase = 0x494e495400000000ULL;

inline void append_history(std::vector<HistoryRow>& history, int iter, const FleetPlan& best,
                           const std::vector<VehicleConfig>& fleet) {
  for (std::size_t v = 0; v < best.routes.size(); ++v) {
    HistoryRow row;
    row.iter = iter;
    row.vehicle = fleet[v].id;
    row.cost = best.routes[v].cost;
    row.t_diff_s = fleet[v].battery_time_s - best.routes[v].mission_time_s;
    row.violation_s = best.routes[v].violation_s;
    row.completed = static_cast<int>(best.routes[v].task_ids.size());
    history.push_back(row);
  }
}

}  // namespace detail

// N fleet plans, each route a uniform-random permutation of its cluster's
// tasks. All individuals share the cluster assignment; costs are evaluated.
inline Population init_population(const ClusterAssignment& clusters,
                                  const std::vector<VehicleConfig>& fleet,
                                  const HfcParams& params, const TaskTable& tasks) {
  validate(params);
  if (clusters.k != static_cast<int>(fleet.size())) {
    throw std::invalid_argument("init_population: vehicle count (" +
                                std::to_string(fleet.size()) + ") != cluster count (" +
                                std::to_string(clusters.k) + ")");
  }
  const auto lists = cluster_task_lists(clusters, tasks);
  Population pop;
  pop.individuals.reserve(static_cast<std::size_t>(params.population_size));
  for (int i = 0; i < params.population_size; ++i) {
    // Init shuffles draw from a salt space disjoint from the loop streams.
    Rng rng = Rng::stream(params.seed, detail::kInitSaltBase + static_cast<std::uint64_t>(i));
    FleetPlan plan;
    plan.routes.reserve(fleet.size());
    for (std::size_t v = 0; v < fleet.size(); ++v) {
      Route r;
      r.vehicle_id = fleet[v].id;
      r.start = fleet[v].start;
      r.goal = fleet[v].goal;
      r.task_ids = lists[v];
      rng.shuffle(r.task_ids);
      plan.routes.push_back(std::move(r));
    }
    for (const auto& vc : fleet) {
      if (segment_time(vc.start, vc.goal, vc.speed_mps) > vc.battery_time_s) {
        plan.infeasible_scenario = true;
      }
    }
    plan_cost(plan, fleet, tasks, params.weights);
    pop.individuals.push_back(std::move(plan));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.individuals.size(); ++i) {
    if (pop.individuals[i].total_cost < pop.individuals[best].total_cost) best = i;
  }
  pop.best = pop.individuals[best];
  return pop;
}

inline HfcResult run_hfc(const TaskTable& tasks, const std::vector<VehicleConfig>& fleet,
                         const ClusterAssignment& clusters, const HfcParams& params,
                         const HfcObserver& observer = {}) {
  Population pop = init_population(clusters, fleet, params, tasks);
  const std::size_t n_ind = pop.individuals.size();
  std::vector<Rng> streams;
  streams.reserve(n_ind);
  for (std::size_t i = 0; i < n_ind; ++i) {
    streams.push_back(Rng::stream(params.seed, static_cast<std::uint64_t>(i)));
  }
  Rng sampler = Rng::stream(params.seed, 0x5343524e00000000ULL);  // screening-sample stream

  HfcResult result;
  result.infeasible_scenario = pop.best.infeasible_scenario;
  auto paranoid = [&](const FleetPlan& plan) {
    if (params.paranoid_checks) check_plan_covers_tasks(plan, tasks);
  };

  detail::append_history(result.history, 0, pop.best, fleet);
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    pop.iteration = iter;
    if (params.ordering_on) {
      for (std::size_t i = 0; i < n_ind; ++i) {
        FleetPlan& plan = pop.individuals[i];
        for (std::size_t v = 0; v < plan.routes.size(); ++v) {
          if (ordering_pass(plan.routes[v], tasks, streams[i])) {
            evaluate_route(plan.routes[v], fleet[v], tasks, params.weights);
          }
          paranoid(plan);
        }
      }
    }
    if (params.screening_on) {
      const auto sample = sampler.sample_indices(n_ind, static_cast<std::size_t>(params.screening_sample));
      for (auto i : sample) {
        FleetPlan& plan = pop.individuals[i];
        for (std::size_t v = 0; v < plan.routes.size(); ++v) {
          if (plan.routes[v].mission_time_s > fleet[v].battery_time_s) {
            ScreenResult sr = screen_route(plan.routes[v], fleet[v], tasks, params.weights);
            plan.abandoned.insert(plan.abandoned.end(), sr.abandoned.begin(), sr.abandoned.end());
            paranoid(plan);
          }
        }
      }
    }
    if (params.cooperation_on) {
      for (std::size_t i = 0; i < n_ind; ++i) {
        FleetPlan& plan = pop.individuals[i];
        if (!plan.abandoned.empty()) {
          cooperate(plan, fleet, tasks, params.weights, streams[i]);
          paranoid(plan);
        }
      }
    }
    for (std::size_t i = 0; i < n_ind; ++i) {
      FleetPlan& plan = pop.individuals[i];
      plan_cost(plan, fleet, tasks, params.weights);
      if (plan.total_cost < pop.best.total_cost) pop.best = plan;
    }
    detail::append_history(result.history, iter, pop.best, fleet);
    if (observer) observer(iter, pop);
  }
  result.best = pop.best;
  return result;
}

}  // namespace fleethfc
