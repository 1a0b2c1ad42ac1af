#pragma once
// Route timing and the constrained mission cost function. This is the single
// evaluation oracle shared by every optimizer in the repository.
//
// Mission time of a route = travel time of start -> tasks in order -> goal at
// the vehicle's constant speed, plus each listed task's injection time counted
// exactly once.
//
// Route cost = lambda1 * |T_mission - T_battery|
//            + lambda2 * (sum of task priorities)^-1
//            + lambda3 * epsilon * max(0, T_mission - T_battery)
//
// The cached violation_s on a Route is the raw overtime in seconds
// (max(0, T_mission - T_battery)); the epsilon scaling enters only through
// the cost. Empty routes replace the priority reciprocal with a configured
// ceiling so the term stays finite while still penalizing task-free routes.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleethfc/geometry.hpp"
#include "fleethfc/tasks.hpp"

namespace fleethfc {

struct CostWeights {
  double lambda1 = 1.0;
  double lambda2 = 1.0e4;
  double lambda3 = 1.0;
  double epsilon = 10.0;
  double empty_route_priority_ceiling = 1.0;
};

// Ordered visit sequence for one vehicle between its fixed start and
// rendezvous stations. Cached metrics are filled by evaluate_route and must
// always equal a fresh recomputation.
struct Route {
  int vehicle_id = -1;
  std::vector<int> task_ids;
  Vec3 start;
  Vec3 goal;

  double total_distance_m = 0.0;
  double mission_time_s = 0.0;
  double violation_s = 0.0;  // raw overtime seconds, not epsilon-scaled
  double priority_sum = 0.0;
  double cost = 0.0;
};

// One candidate solution: a route per vehicle plus the abandoned-task pool.
struct FleetPlan {
  std::vector<Route> routes;
  std::vector<int> abandoned;
  double total_cost = 0.0;
  // True when some vehicle cannot even reach the rendezvous on an empty
  // route within its battery budget.
  bool infeasible_scenario = false;
};

inline double route_travel_distance(const Route& route, const TaskTable& tasks) {
  Vec3 prev = route.start;
  double dist = 0.0;
  for (int id : route.task_ids) {
    const TaskSpot& t = task_by_id(tasks, id);
    dist += segment_distance(prev, t.position);
    prev = t.position;
  }
  dist += segment_distance(prev, route.goal);
  return dist;
}

inline double mission_time(const Route& route, const VehicleConfig& vehicle,
                           const TaskTable& tasks) {
  if (vehicle.speed_mps <= 0.0) {
    throw std::invalid_argument("mission_time: vehicle speed must be positive");
  }
  double injection = 0.0;
  for (int id : route.task_ids) injection += task_by_id(tasks, id).injection_time_s;
  return route_travel_distance(route, tasks) / vehicle.speed_mps + injection;
}

// Epsilon-scaled overtime penalty; zero iff the route finishes on budget.
inline double violation_penalty(double mission_time_s, double battery_time_s, double epsilon) {
  if (battery_time_s <= 0.0) {
    throw std::invalid_argument("violation_penalty: battery time must be positive");
  }
  return epsilon * std::max(0.0, mission_time_s - battery_time_s);
}

inline double route_priority_sum(const Route& route, const TaskTable& tasks) {
  double p = 0.0;
  for (int id : route.task_ids) p += static_cast<double>(task_by_id(tasks, id).priority);
  return p;
}

inline double cost_from_metrics(double mission_time_s, double priority_sum,
                                double battery_time_s, const CostWeights& w) {
  const double priority_term =
      priority_sum > 0.0 ? 1.0 / priority_sum : w.empty_route_priority_ceiling;
  return w.lambda1 * std::abs(mission_time_s - battery_time_s) + w.lambda2 * priority_term +
         w.lambda3 * violation_penalty(mission_time_s, battery_time_s, w.epsilon);
}

inline double route_cost(const Route& route, const VehicleConfig& vehicle,
                         const TaskTable& tasks, const CostWeights& weights) {
  return cost_from_metrics(mission_time(route, vehicle, tasks),
                           route_priority_sum(route, tasks), vehicle.battery_time_s, weights);
}

// Fills every cached metric on the route.
inline void evaluate_route(Route& route, const VehicleConfig& vehicle, const TaskTable& tasks,
                           const CostWeights& weights) {
  route.total_distance_m = route_travel_distance(route, tasks);
  double injection = 0.0;
  for (int id : route.task_ids) injection += task_by_id(tasks, id).injection_time_s;
  route.mission_time_s = route.total_distance_m / vehicle.speed_mps + injection;
  route.violation_s = std::max(0.0, route.mission_time_s - vehicle.battery_time_s);
  route.priority_sum = route_priority_sum(route, tasks);
  route.cost = cost_from_metrics(route.mission_time_s, route.priority_sum,
                                 vehicle.battery_time_s, weights);
}

// Throws if any task id appears in two routes, or in both a route and the
// abandoned set.
inline void check_exclusivity(const FleetPlan& plan, const TaskTable& tasks) {
  std::vector<std::uint8_t> seen(tasks.size(), 0);
  auto mark = [&](int id, const char* where) {
    task_by_id(tasks, id);
    if (seen[static_cast<std::size_t>(id)]++) {
      throw std::invalid_argument("exclusivity violation: task " + std::to_string(id) +
                                  " listed twice (" + where + ")");
    }
  };
  for (const Route& r : plan.routes) {
    for (int id : r.task_ids) mark(id, "route");
  }
  for (int id : plan.abandoned) mark(id, "abandoned");
}

// Throws unless routes + abandoned exactly partition the task table.
inline void check_plan_covers_tasks(const FleetPlan& plan, const TaskTable& tasks) {
  check_exclusivity(plan, tasks);
  std::size_t listed = plan.abandoned.size();
  for (const Route& r : plan.routes) listed += r.task_ids.size();
  if (listed != tasks.size()) {
    throw std::invalid_argument("plan lists " + std::to_string(listed) + " tasks, table has " +
                                std::to_string(tasks.size()));
  }
}

// Evaluates every route and the plan total. Exclusivity is verified first.
inline double plan_cost(FleetPlan& plan, const std::vector<VehicleConfig>& fleet,
                        const TaskTable& tasks, const CostWeights& weights) {
  if (plan.routes.size() != fleet.size()) {
    throw std::invalid_argument("plan_cost: plan has " + std::to_string(plan.routes.size()) +
                                " routes for " + std::to_string(fleet.size()) + " vehicles");
  }
  check_exclusivity(plan, tasks);
  double total = 0.0;
  for (std::size_t i = 0; i < plan.routes.size(); ++i) {
    evaluate_route(plan.routes[i], fleet[i], tasks, weights);
    total += plan.routes[i].cost;
  }
  plan.total_cost = total;
  return total;
}

}  // namespace fleethfc
