#pragma once
// Injection tasks and density-proportional task sampling.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleethfc/field.hpp"
#include "fleethfc/geometry.hpp"
#include "fleethfc/rng.hpp"

namespace fleethfc {

enum class TaskStatus { pending, assigned, completed, abandoned };

inline const char* to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::pending: return "pending";
    case TaskStatus::assigned: return "assigned";
    case TaskStatus::completed: return "completed";
    case TaskStatus::abandoned: return "abandoned";
  }
  return "?";
}

// One injection target. Immutable once sampled; solvers never mutate the
// table, final statuses are written onto a copy when a run is assembled.
struct TaskSpot {
  int id = 0;
  Vec3 position;
  int priority = 1;                // rank in [1, 100]
  double injection_time_s = 90.0;  // in [60, 90]
  TaskStatus status = TaskStatus::pending;
};

using TaskTable = std::vector<TaskSpot>;

struct TaskSamplingParams {
  int priority_min = 1;
  int priority_max = 100;
  double injection_min_s = 60.0;
  double injection_max_s = 90.0;
  std::optional<double> injection_fixed_s;  // overrides the range when set
};

// Rejection sampling proportional to field density. Positions land only on
// unmasked cells (masked cells have zero density). Deterministic per seed.
inline TaskTable sample_tasks(const FieldModel& field, int n, std::uint64_t seed,
                              const TaskSamplingParams& params) {
  if (n < 0) throw std::invalid_argument("sample_tasks: n must be >= 0");
  if (params.priority_min < 1 || params.priority_max > 100 ||
      params.priority_min > params.priority_max) {
    throw std::invalid_argument("sample_tasks: priority range must lie within [1, 100]");
  }
  TaskTable tasks;
  if (n == 0) return tasks;
  if (field.max_cell_density() <= 0.0) {
    throw std::invalid_argument(
        "sample_tasks: field has no unmasked density mass to sample from");
  }
  Rng rng(seed);
  tasks.reserve(static_cast<std::size_t>(n));
  // With nonzero mass the acceptance rate is bounded below; the attempt cap
  // only guards against degenerate hand-written specs.
  const std::uint64_t max_attempts = 200000ULL * static_cast<std::uint64_t>(n) + 100000ULL;
  std::uint64_t attempts = 0;
  while (static_cast<int>(tasks.size()) < n) {
    if (++attempts > max_attempts) {
      throw std::runtime_error("sample_tasks: acceptance rate too low, check field spec");
    }
    const double x = rng.uniform(0.0, field.width_m());
    const double y = rng.uniform(0.0, field.height_m());
    if (rng.uniform01() >= field.density_at(x, y)) continue;
    TaskSpot t;
    t.id = static_cast<int>(tasks.size());
    t.position = {x, y, field.depth_at(x, y)};
    t.priority = rng.uniform_int(params.priority_min, params.priority_max);
    t.injection_time_s = params.injection_fixed_s
                             ? *params.injection_fixed_s
                             : rng.uniform(params.injection_min_s, params.injection_max_s);
    t.status = TaskStatus::pending;
    tasks.push_back(t);
  }
  return tasks;
}

inline TaskTable sample_tasks(const FieldModel& field, int n, std::uint64_t seed) {
  return sample_tasks(field, n, seed, TaskSamplingParams{});
}

inline const TaskSpot& task_by_id(const TaskTable& tasks, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= tasks.size() || tasks[id].id != id) {
    throw std::invalid_argument("unknown task id " + std::to_string(id));
  }
  return tasks[static_cast<std::size_t>(id)];
}

}  // namespace fleethfc
