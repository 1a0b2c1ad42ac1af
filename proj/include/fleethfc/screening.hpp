#pragma once
// Constraint-driven task abandonment. While a route overruns its battery
// budget, the single task whose removal yields the lowest route cost is
// dropped, until the route is feasible or only one task remains. Cost ties
// break toward the earliest position in the route.

#include <limits>
#include <vector>

#include "fleethfc/cost.hpp"

namespace fleethfc {

struct ScreenResult {
  std::vector<int> abandoned;  // ids in removal order
};

inline ScreenResult screen_route(Route& route, const VehicleConfig& vehicle,
                                 const TaskTable& tasks, const CostWeights& weights) {
  ScreenResult result;
  evaluate_route(route, vehicle, tasks, weights);
  while (route.violation_s > 0.0 && route.task_ids.size() > 1) {
    double best_cost = std::numeric_limits<double>::max();
    std::size_t best_pos = 0;
    Route probe = route;
    for (std::size_t pos = 0; pos < route.task_ids.size(); ++pos) {
      probe.task_ids = route.task_ids;
      probe.task_ids.erase(probe.task_ids.begin() + static_cast<std::ptrdiff_t>(pos));
      const double c = route_cost(probe, vehicle, tasks, weights);
      if (c < best_cost) {
        best_cost = c;
        best_pos = pos;
      }
    }
    result.abandoned.push_back(route.task_ids[best_pos]);
    route.task_ids.erase(route.task_ids.begin() + static_cast<std::ptrdiff_t>(best_pos));
    evaluate_route(route, vehicle, tasks, weights);
  }
  return result;
}

}  // namespace fleethfc
