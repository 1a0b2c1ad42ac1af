#pragma once
// Route-improvement mutation: swap, insertion, and reversion moves on the
// task sequence, accepted only when the route does not get longer. Endpoints
// (start and rendezvous stations) never move.

#include <algorithm>
#include <vector>

#include "fleethfc/cost.hpp"
#include "fleethfc/rng.hpp"

namespace fleethfc {

enum class OrderingMove { swap = 0, insertion = 1, reversion = 2 };

inline void swap_move(std::vector<int>& seq, std::size_t i, std::size_t j) {
  std::swap(seq[i], seq[j]);
}

// Moves the element at the later position j to immediately before position i.
inline void insertion_move(std::vector<int>& seq, std::size_t i, std::size_t j) {
  const int v = seq[j];
  seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(j));
  seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(i), v);
}

// Reverses the segment [i, j] in place (the classic 2-opt move).
inline void reversion_move(std::vector<int>& seq, std::size_t i, std::size_t j) {
  std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(i),
               seq.begin() + static_cast<std::ptrdiff_t>(j) + 1);
}

inline void apply_move(std::vector<int>& seq, OrderingMove move, std::size_t i, std::size_t j) {
  switch (move) {
    case OrderingMove::swap: swap_move(seq, i, j); break;
    case OrderingMove::insertion: insertion_move(seq, i, j); break;
    case OrderingMove::reversion: reversion_move(seq, i, j); break;
  }
}

// One ordering attempt: picks two distinct positions and one move uniformly,
// keeps the mutation only if the resulting route length is <= the original.
// Returns true when the route changed. Routes with fewer than two tasks are
// returned unchanged (no draw is consumed). Only the distance cache is
// refreshed here; callers re-evaluate time/cost after an accepted move.
inline bool order_route(Route& route, const TaskTable& tasks, Rng& rng) {
  const std::size_t n = route.task_ids.size();
  if (n < 2) return false;
  std::size_t i = rng.index(n);
  std::size_t j = rng.index(n - 1);
  if (j >= i) ++j;
  if (i > j) std::swap(i, j);
  const auto move = static_cast<OrderingMove>(rng.index(3));

  const double old_len = route_travel_distance(route, tasks);
  std::vector<int> mutated = route.task_ids;
  apply_move(mutated, move, i, j);
  Route candidate = route;
  candidate.task_ids = std::move(mutated);
  const double new_len = route_travel_distance(candidate, tasks);
  if (new_len <= old_len) {
    route.task_ids = std::move(candidate.task_ids);
    route.total_distance_m = new_len;
    return true;
  }
  route.total_distance_m = old_len;
  return false;
}

// One ordering pass over a route: as many attempts as the route has tasks.
// Returns true when any attempt was accepted.
inline bool ordering_pass(Route& route, const TaskTable& tasks, Rng& rng) {
  bool changed = false;
  const std::size_t attempts = route.task_ids.size();
  for (std::size_t a = 0; a < attempts; ++a) {
    changed = order_route(route, tasks, rng) || changed;
  }
  return changed;
}

}  // namespace fleethfc
