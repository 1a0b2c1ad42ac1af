#pragma once
// Comparison baseline: K-means decomposition plus a per-cluster genetic
// algorithm over visit orders, with partially-mapped crossover and a mutation
// move drawn from the same swap/insertion/reversion family as the ordering
// operator. Fitness is route time plus the epsilon-scaled overtime; the
// priority term plays no role here.
//
// Feasibility is reached by dropping the task the incumbent best visits last
// before heading to the rendezvous. A drop fires after any generation that
// fails to improve the best fitness while the best route still violates its
// budget, so dropping interleaves with ordering and acts on routes that are
// already swept toward the rendezvous; that is what strips the far end of
// each cluster first. The dropped task leaves every individual's
// permutation. There is no cooperation between clusters.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fleethfc/clustering.hpp"
#include "fleethfc/cost.hpp"
#include "fleethfc/hfc.hpp"
#include "fleethfc/ordering.hpp"
#include "fleethfc/rng.hpp"

namespace fleethfc {

struct GaParams {
  int population_size = 200;
  int max_iter = 150;
  double crossover_rate = 0.8;
  double mutation_rate = 0.2;
  std::uint64_t seed = 42;
};

inline void validate(const GaParams& p) {
  if (p.population_size < 2) throw std::invalid_argument("ga: population_size must be >= 2");
  if (p.max_iter < 1) throw std::invalid_argument("ga: max_iter must be >= 1");
  if (p.crossover_rate < 0.0 || p.crossover_rate > 1.0) {
    throw std::invalid_argument("ga: crossover_rate must be in [0, 1]");
  }
  if (p.mutation_rate < 0.0 || p.mutation_rate > 1.0) {
    throw std::invalid_argument("ga: mutation_rate must be in [0, 1]");
  }
}

// Standard PMX. The segment [cut1, cut2) is exchanged between the parents and
// conflicts outside the segment are resolved through the positional mapping,
// so both children are valid permutations of the common task set.
inline std::pair<std::vector<int>, std::vector<int>> pmx_crossover(const std::vector<int>& a,
                                                                   const std::vector<int>& b,
                                                                   std::size_t cut1,
                                                                   std::size_t cut2) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pmx_crossover: parents have different lengths");
  }
  if (cut1 > cut2 || cut2 > a.size()) {
    throw std::invalid_argument("pmx_crossover: invalid cut points");
  }
  {
    std::vector<int> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) throw std::invalid_argument("pmx_crossover: parents over different task sets");
  }
  std::vector<int> child_a = a;
  std::vector<int> child_b = b;
  for (std::size_t i = cut1; i < cut2; ++i) {
    child_a[i] = b[i];
    child_b[i] = a[i];
  }
  auto resolve = [&](std::vector<int>& child, const std::vector<int>& outside_parent,
                     const std::vector<int>& seg_from, const std::vector<int>& seg_to) {
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (i >= cut1 && i < cut2) continue;
      int v = outside_parent[i];
      std::size_t guard = 0;
      while (true) {
        bool mapped = false;
        for (std::size_t s = cut1; s < cut2; ++s) {
          if (seg_from[s] == v) {
            v = seg_to[s];
            mapped = true;
            break;
          }
        }
        if (!mapped) break;
        if (++guard > child.size()) {
          throw std::logic_error("pmx_crossover: mapping chain failed to terminate");
        }
      }
      child[i] = v;
    }
  };
  // child_a carries b's segment: values still equal to something inside that
  // segment map back through a's segment, and vice versa for child_b.
  resolve(child_a, a, b, a);
  resolve(child_b, b, a, b);
  return {std::move(child_a), std::move(child_b)};
}

struct GaResult {
  FleetPlan best;
  std::vector<HistoryRow> history;
  bool infeasible_scenario = false;
};

namespace detail {

struct GaIndividual {
  std::vector<int> order;
  double fitness = 0.0;
};

inline double ga_fitness(const std::vector<int>& order, const Route& proto,
                         const VehicleConfig& vehicle, const TaskTable& tasks,
                         const CostWeights& weights) {
  Route r = proto;
  r.task_ids = order;
  const double tm = mission_time(r, vehicle, tasks);
  return tm + violation_penalty(tm, vehicle.battery_time_s, weights.epsilon);
}

}  // namespace detail

// Evolves each cluster independently and assembles the per-vehicle best
// routes into one plan. History rows use the same schema as the HFC loop.
inline GaResult run_ga(const TaskTable& tasks, const std::vector<VehicleConfig>& fleet,
                       const ClusterAssignment& clusters, const GaParams& params,
                       const CostWeights& weights) {
  validate(params);
  if (clusters.k != static_cast<int>(fleet.size())) {
    throw std::invalid_argument("run_ga: vehicle count != cluster count");
  }
  const auto lists = cluster_task_lists(clusters, tasks);
  GaResult result;
  result.best.routes.resize(fleet.size());

  // Per-vehicle snapshots of the incumbent best at each generation, merged
  // into history after all clusters have run.
  std::vector<std::vector<Route>> best_by_iter(
      static_cast<std::size_t>(params.max_iter) + 1,
      std::vector<Route>(fleet.size()));

  for (std::size_t v = 0; v < fleet.size(); ++v) {
    const VehicleConfig& vehicle = fleet[v];
    if (segment_time(vehicle.start, vehicle.goal, vehicle.speed_mps) > vehicle.battery_time_s) {
      result.infeasible_scenario = true;
    }
    Route proto;
    proto.vehicle_id = vehicle.id;
    proto.start = vehicle.start;
    proto.goal = vehicle.goal;

    std::vector<int> pool = lists[v];  // shrinks as tasks are dropped
    Rng rng = Rng::stream(params.seed, 0x4741000000000000ULL + v);

    std::vector<detail::GaIndividual> population(
        static_cast<std::size_t>(params.population_size));
    for (auto& ind : population) {
      ind.order = pool;
      rng.shuffle(ind.order);
      ind.fitness = detail::ga_fitness(ind.order, proto, vehicle, tasks, weights);
    }
    auto best_of = [&]() -> const detail::GaIndividual& {
      std::size_t b = 0;
      for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].fitness < population[b].fitness) b = i;
      }
      return population[b];
    };
    auto snapshot = [&](int iter) {
      Route r = proto;
      r.task_ids = best_of().order;
      evaluate_route(r, vehicle, tasks, weights);
      best_by_iter[static_cast<std::size_t>(iter)][v] = r;
    };
    snapshot(0);
    double prev_best_fitness = best_of().fitness;

    for (int gen = 1; gen <= params.max_iter; ++gen) {
      // Offspring via random pairing over a shuffled parent order.
      std::vector<std::size_t> idx(population.size());
      std::iota(idx.begin(), idx.end(), 0);
      rng.shuffle(idx);
      std::vector<detail::GaIndividual> offspring;
      offspring.reserve(population.size());
      for (std::size_t p = 0; p + 1 < idx.size(); p += 2) {
        const auto& pa = population[idx[p]].order;
        const auto& pb = population[idx[p + 1]].order;
        std::vector<int> ca = pa;
        std::vector<int> cb = pb;
        if (pool.size() >= 2 && rng.uniform01() < params.crossover_rate) {
          std::size_t c1 = rng.index(pool.size() + 1);
          std::size_t c2 = rng.index(pool.size() + 1);
          if (c1 > c2) std::swap(c1, c2);
          std::tie(ca, cb) = pmx_crossover(pa, pb, c1, c2);
        }
        for (auto* child : {&ca, &cb}) {
          if (pool.size() >= 2 && rng.uniform01() < params.mutation_rate) {
            std::size_t i = rng.index(child->size());
            std::size_t j = rng.index(child->size() - 1);
            if (j >= i) ++j;
            if (i > j) std::swap(i, j);
            apply_move(*child, static_cast<OrderingMove>(rng.index(3)), i, j);
          }
        }
        detail::GaIndividual ia{std::move(ca), 0.0};
        detail::GaIndividual ib{std::move(cb), 0.0};
        ia.fitness = detail::ga_fitness(ia.order, proto, vehicle, tasks, weights);
        ib.fitness = detail::ga_fitness(ib.order, proto, vehicle, tasks, weights);
        offspring.push_back(std::move(ia));
        offspring.push_back(std::move(ib));
      }
      // Elitist truncation over parents + offspring.
      for (auto& o : offspring) population.push_back(std::move(o));
      std::stable_sort(population.begin(), population.end(),
                       [](const auto& x, const auto& y) { return x.fitness < y.fitness; });
      population.resize(static_cast<std::size_t>(params.population_size));

      // Drop the incumbent best's last-ordered task: only while it violates,
      // and only once the generation stalled (no fitness improvement), so the
      // route is swept before its far end gets stripped.
      const double gen_best = best_of().fitness;
      if (pool.size() > 1 && gen_best >= prev_best_fitness) {
        Route probe = proto;
        probe.task_ids = best_of().order;
        const double tm = mission_time(probe, vehicle, tasks);
        if (tm > vehicle.battery_time_s) {
          const int victim = probe.task_ids.back();
          if (std::getenv("FLEETHFC_GA_TRACE")) {
            std::fprintf(stderr, "drop gen=%d vehicle=%d victim=%d route_len=%zu tm=%.0f\n", gen,
                         vehicle.id, victim, probe.task_ids.size(), tm);
          }
          pool.erase(std::find(pool.begin(), pool.end(), victim));
          result.best.abandoned.push_back(victim);
          for (auto& ind : population) {
            ind.order.erase(std::find(ind.order.begin(), ind.order.end(), victim));
            ind.fitness = detail::ga_fitness(ind.order, proto, vehicle, tasks, weights);
          }
        }
      }
      prev_best_fitness = best_of().fitness;
      snapshot(gen);
    }
    Route final_route = proto;
    final_route.task_ids = best_of().order;
    evaluate_route(final_route, vehicle, tasks, weights);
    result.best.routes[v] = std::move(final_route);
  }

  for (int iter = 0; iter <= params.max_iter; ++iter) {
    for (std::size_t v = 0; v < fleet.size(); ++v) {
      const Route& r = best_by_iter[static_cast<std::size_t>(iter)][v];
      HistoryRow row;
      row.iter = iter;
      row.vehicle = fleet[v].id;
      row.cost = r.cost;
      row.t_diff_s = fleet[v].battery_time_s - r.mission_time_s;
      row.violation_s = r.violation_s;
      row.completed = static_cast<int>(r.task_ids.size());
      result.history.push_back(row);
    }
  }
  plan_cost(result.best, fleet, tasks, weights);
  return result;
}

}  // namespace fleethfc
