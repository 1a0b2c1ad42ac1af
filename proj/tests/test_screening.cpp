#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "fleethfc/rng.hpp"
#include "fleethfc/screening.hpp"

using namespace fleethfc;

namespace {

TaskSpot make_task(int id, Vec3 pos, int priority, double injection) {
  TaskSpot t;
  t.id = id;
  t.position = pos;
  t.priority = priority;
  t.injection_time_s = injection;
  return t;
}

// Reference greedy re-implementation: full cost recomputation per candidate,
// remove the argmin, repeat while violating. Mirrors the documented
// tie-break (earliest position).
std::pair<std::vector<int>, std::vector<int>> reference_greedy(Route route,
                                                               const VehicleConfig& vehicle,
                                                               const TaskTable& tasks,
                                                               const CostWeights& w) {
  std::vector<int> abandoned;
  while (route.task_ids.size() > 1) {
    const double tm = mission_time(route, vehicle, tasks);
    if (tm <= vehicle.battery_time_s) break;
    double best = std::numeric_limits<double>::max();
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < route.task_ids.size(); ++pos) {
      Route probe = route;
      probe.task_ids.erase(probe.task_ids.begin() + static_cast<std::ptrdiff_t>(pos));
      const double c = route_cost(probe, vehicle, tasks, w);
      if (c < best) {
        best = c;
        best_pos = pos;
      }
    }
    abandoned.push_back(route.task_ids[best_pos]);
    route.task_ids.erase(route.task_ids.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  return {route.task_ids, abandoned};
}

}  // namespace

TEST_CASE("screening leaves feasible routes untouched") {
  VehicleConfig v{0, 1.0, 3600.0, {0, 0, 0}, {100, 0, 0}};
  TaskTable tasks = {make_task(0, {50, 0, 0}, 10, 90.0)};
  Route r;
  r.start = v.start;
  r.goal = v.goal;
  r.task_ids = {0};
  CostWeights w;
  const auto result = screen_route(r, v, tasks, w);
  CHECK(result.abandoned.empty());
  CHECK(r.task_ids == std::vector<int>{0});
  CHECK(r.violation_s == 0.0);
}

TEST_CASE("screening abandons the far off-path task first") {
  // Budget fits exactly one of two equal-priority tasks; the distant one goes.
  VehicleConfig v{0, 1.0, 300.0, {0, 0, 0}, {20, 0, 0}};
  TaskTable tasks = {make_task(0, {10, 0, 0}, 50, 90.0), make_task(1, {10, 800, 0}, 50, 90.0)};
  Route r;
  r.start = v.start;
  r.goal = v.goal;
  r.task_ids = {0, 1};
  CostWeights w;
  const auto result = screen_route(r, v, tasks, w);
  REQUIRE(result.abandoned.size() == 1);
  CHECK(result.abandoned[0] == 1);
  CHECK(r.task_ids == std::vector<int>{0});
  CHECK(r.violation_s == 0.0);
}

TEST_CASE("screening matches the reference greedy oracle") {
  Rng rng(31);
  CostWeights w;
  for (int trial = 0; trial < 25; ++trial) {
    VehicleConfig v{0, 1.0, rng.uniform(400, 900), {0, 0, 0}, {100, 100, 0}};
    TaskTable tasks;
    const int n = 6 + static_cast<int>(rng.index(5));
    for (int i = 0; i < n; ++i) {
      tasks.push_back(make_task(i, {rng.uniform(0, 300), rng.uniform(0, 300), 0},
                                rng.uniform_int(1, 100), rng.uniform(60, 90)));
    }
    Route r;
    r.start = v.start;
    r.goal = v.goal;
    for (int i = 0; i < n; ++i) r.task_ids.push_back(i);
    const auto [expect_kept, expect_abandoned] = reference_greedy(r, v, tasks, w);

    Route screened = r;
    const auto result = screen_route(screened, v, tasks, w);
    CHECK(screened.task_ids == expect_kept);
    CHECK(result.abandoned == expect_abandoned);
    // Final kept-set cost identical to the oracle's.
    Route oracle_route = r;
    oracle_route.task_ids = expect_kept;
    CHECK(route_cost(oracle_route, v, tasks, w) == route_cost(screened, v, tasks, w));
  }
}

TEST_CASE("screening stops at one task even if still violating") {
  VehicleConfig v{0, 1.0, 50.0, {0, 0, 0}, {0, 0, 0}};
  TaskTable tasks = {make_task(0, {400, 0, 0}, 10, 90.0), make_task(1, {500, 0, 0}, 20, 90.0)};
  Route r;
  r.start = v.start;
  r.goal = v.goal;
  r.task_ids = {0, 1};
  CostWeights w;
  const auto result = screen_route(r, v, tasks, w);
  CHECK(r.task_ids.size() == 1);
  CHECK(result.abandoned.size() == 1);
  CHECK(r.violation_s > 0.0);
}

TEST_CASE("screening terminates with zero violation whenever feasibility is reachable") {
  Rng rng(47);
  CostWeights w;
  for (int trial = 0; trial < 10; ++trial) {
    VehicleConfig v{0, 1.0, 1200.0, {0, 0, 0}, {50, 50, 0}};
    TaskTable tasks;
    for (int i = 0; i < 12; ++i) {
      tasks.push_back(make_task(i, {rng.uniform(0, 200), rng.uniform(0, 200), 0},
                                rng.uniform_int(1, 100), 90.0));
    }
    Route r;
    r.start = v.start;
    r.goal = v.goal;
    for (int i = 0; i < 12; ++i) r.task_ids.push_back(i);
    screen_route(r, v, tasks, w);
    CHECK(r.violation_s == 0.0);
  }
}
