#pragma once
// Idle-vehicle task overtaking. A vehicle with residual battery time adopts
// abandoned tasks, nearest (to its route's last waypoint) first, as long as
// the extended route still finishes within its budget. Every adoption is
// followed by an ordering pass on the recipient route, which can only
// shorten it, so no adoption ever introduces a violation.

#include <algorithm>
#include <vector>

#include "fleethfc/cost.hpp"
#include "fleethfc/ordering.hpp"
#include "fleethfc/rng.hpp"

namespace fleethfc {

// Returns the number of adopted tasks. Vehicles are processed in index
// order; candidates are tried nearest-first with ties broken by lowest task
// id, and the first candidate that fits is adopted.
inline int cooperate(FleetPlan& plan, const std::vector<VehicleConfig>& fleet,
                     const TaskTable& tasks, const CostWeights& weights, Rng& rng) {
  if (plan.abandoned.empty()) return 0;
  int adopted = 0;
  for (std::size_t v = 0; v < plan.routes.size(); ++v) {
    Route& route = plan.routes[v];
    const VehicleConfig& vehicle = fleet[v];
    evaluate_route(route, vehicle, tasks, weights);
    while (!plan.abandoned.empty() &&
           vehicle.battery_time_s - route.mission_time_s > 0.0) {
      const Vec3 last =
          route.task_ids.empty() ? route.start : task_by_id(tasks, route.task_ids.back()).position;
      // Candidates in increasing distance from the route's last waypoint.
      std::vector<std::pair<double, int>> order;
      order.reserve(plan.abandoned.size());
      for (int id : plan.abandoned) {
        order.emplace_back(segment_distance(last, task_by_id(tasks, id).position), id);
      }
      std::sort(order.begin(), order.end());
      int pick = -1;
      for (const auto& [dist, id] : order) {
        Route candidate = route;
        candidate.task_ids.push_back(id);
        if (mission_time(candidate, vehicle, tasks) <= vehicle.battery_time_s) {
          pick = id;
          break;
        }
      }
      if (pick < 0) break;
      route.task_ids.push_back(pick);
      plan.abandoned.erase(std::find(plan.abandoned.begin(), plan.abandoned.end(), pick));
      evaluate_route(route, vehicle, tasks, weights);
      if (ordering_pass(route, tasks, rng)) {
        evaluate_route(route, vehicle, tasks, weights);
      }
      ++adopted;
    }
  }
  return adopted;
}

}  // namespace fleethfc
