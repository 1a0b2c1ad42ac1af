#include <catch2/catch_amalgamated.hpp>

#include "fleethfc/cooperation.hpp"
#include "fleethfc/rng.hpp"

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

}  // namespace

TEST_CASE("cooperate is a no-op without abandoned tasks") {
  std::vector<VehicleConfig> fleet = {{0, 1.0, 3600.0, {0, 0, 0}, {100, 0, 0}}};
  TaskTable tasks = {make_task(0, {50, 0, 0}, 10, 90.0)};
  FleetPlan plan;
  Route r;
  r.vehicle_id = 0;
  r.start = fleet[0].start;
  r.goal = fleet[0].goal;
  r.task_ids = {0};
  plan.routes = {r};
  CostWeights w;
  plan_cost(plan, fleet, tasks, w);
  const FleetPlan before = plan;
  Rng rng(1);
  CHECK(cooperate(plan, fleet, tasks, w, rng) == 0);
  CHECK(plan.routes[0].task_ids == before.routes[0].task_ids);
}

TEST_CASE("single feasible adoption with exact time bookkeeping") {
  // Route: (0,0) -> task0 (100,0) -> goal (200,0); battery leaves 500 s slack.
  // Abandoned task 10 m off the last task. Adoption adds legs
  // 100->110 (10 m) and 110->200 (i.e. 90 m replacing the old 100 m leg)
  // plus 90 s injection: delta = 10 + 90 - 100 + 90 = 90 s.
  std::vector<VehicleConfig> fleet = {{0, 1.0, 290.0 + 500.0, {0, 0, 0}, {200, 0, 0}}};
  TaskTable tasks = {make_task(0, {100, 0, 0}, 10, 90.0), make_task(1, {110, 0, 0}, 20, 90.0)};
  FleetPlan plan;
  Route r;
  r.vehicle_id = 0;
  r.start = fleet[0].start;
  r.goal = fleet[0].goal;
  r.task_ids = {0};
  plan.routes = {r};
  plan.abandoned = {1};
  CostWeights w;
  plan_cost(plan, fleet, tasks, w);
  const double before_tm = plan.routes[0].mission_time_s;
  CHECK(before_tm == Catch::Approx(290.0));

  Rng rng(3);
  const int adopted = cooperate(plan, fleet, tasks, w, rng);
  CHECK(adopted == 1);
  CHECK(plan.abandoned.empty());
  CHECK(plan.routes[0].task_ids == std::vector<int>{0, 1});
  CHECK(plan.routes[0].mission_time_s == Catch::Approx(before_tm + 90.0));
  CHECK(plan.routes[0].violation_s == 0.0);
}

TEST_CASE("adoption is skipped when nothing fits the residual budget") {
  std::vector<VehicleConfig> fleet = {{0, 1.0, 300.0, {0, 0, 0}, {200, 0, 0}}};
  TaskTable tasks = {make_task(0, {100, 0, 0}, 10, 90.0), make_task(1, {100, 5000, 0}, 20, 90.0)};
  FleetPlan plan;
  Route r;
  r.vehicle_id = 0;
  r.start = fleet[0].start;
  r.goal = fleet[0].goal;
  r.task_ids = {0};
  plan.routes = {r};
  plan.abandoned = {1};
  CostWeights w;
  plan_cost(plan, fleet, tasks, w);
  Rng rng(3);
  CHECK(cooperate(plan, fleet, tasks, w, rng) == 0);
  CHECK(plan.abandoned == std::vector<int>{1});
}

TEST_CASE("nearest abandoned task wins, ties break toward the lower id") {
  // Budget admits exactly one adoption; the equidistant pair (1, 2) must
  // resolve toward the lower id.
  // Base route 0 -> t0 -> goal: 100 m travel + 90 s = 190 s. Adopting either
  // of tasks 1/2 gives 190 - 50 + 30 + 90 + sqrt(50^2 + 30^2) = 318.3 s.
  std::vector<VehicleConfig> fleet = {{0, 1.0, 320.0, {0, 0, 0}, {100, 0, 0}}};
  TaskTable tasks = {make_task(0, {50, 0, 0}, 10, 90.0),
                     make_task(1, {50, 30, 0}, 20, 90.0),   // equidistant pair
                     make_task(2, {50, -30, 0}, 30, 90.0),  // from task 0
                     make_task(3, {50, 200, 0}, 40, 90.0)};
  FleetPlan plan;
  Route r;
  r.vehicle_id = 0;
  r.start = fleet[0].start;
  r.goal = fleet[0].goal;
  r.task_ids = {0};
  plan.routes = {r};
  plan.abandoned = {3, 2, 1};
  CostWeights w;
  plan_cost(plan, fleet, tasks, w);
  Rng rng(5);
  CHECK(cooperate(plan, fleet, tasks, w, rng) == 1);
  REQUIRE(plan.routes[0].task_ids.size() == 2);
  CHECK(std::count(plan.routes[0].task_ids.begin(), plan.routes[0].task_ids.end(), 1) == 1);
  CHECK(plan.abandoned == std::vector<int>{3, 2});
}

TEST_CASE("cooperation never introduces a violation") {
  Rng scenario_rng(91);
  CostWeights w;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<VehicleConfig> fleet = {
        {0, 1.0, scenario_rng.uniform(500, 1500), {0, 0, 0}, {100, 100, 0}},
        {1, 1.0, scenario_rng.uniform(500, 1500), {0, 0, 0}, {100, 100, 0}}};
    TaskTable tasks;
    for (int i = 0; i < 14; ++i) {
      tasks.push_back(make_task(i, {scenario_rng.uniform(0, 400), scenario_rng.uniform(0, 400), 0},
                                scenario_rng.uniform_int(1, 100), 90.0));
    }
    FleetPlan plan;
    for (int v = 0; v < 2; ++v) {
      Route r;
      r.vehicle_id = v;
      r.start = fleet[static_cast<std::size_t>(v)].start;
      r.goal = fleet[static_cast<std::size_t>(v)].goal;
      r.task_ids = {v * 2, v * 2 + 1};  // tasks 0..3 assigned
      plan.routes.push_back(r);
    }
    for (int i = 4; i < 14; ++i) plan.abandoned.push_back(i);
    plan_cost(plan, fleet, tasks, w);
    const bool was_feasible = plan.routes[0].violation_s == 0 && plan.routes[1].violation_s == 0;
    Rng rng(static_cast<std::uint64_t>(trial));
    cooperate(plan, fleet, tasks, w, rng);
    plan_cost(plan, fleet, tasks, w);
    if (was_feasible) {
      CHECK(plan.routes[0].violation_s == 0.0);
      CHECK(plan.routes[1].violation_s == 0.0);
    }
    check_plan_covers_tasks(plan, tasks);
  }
}
