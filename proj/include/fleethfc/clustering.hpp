#pragma once
// Task-space decomposition: K-means (Lloyd) and Fuzzy C-Means, plus the two
// membership-to-label policies (max membership, roulette wheel) and the
// cluster-to-vehicle pairing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleethfc/cost.hpp"
#include "fleethfc/geometry.hpp"
#include "fleethfc/rng.hpp"
#include "fleethfc/tasks.hpp"

namespace fleethfc {

struct ClusterAssignment {
  int k = 0;
  std::vector<Vec3> centers;
  // task id -> cluster index, -1 while unset (FCM leaves labels to a policy).
  std::vector<int> labels;
  // task x cluster membership matrix; empty unless produced by FCM. Rows sum
  // to 1 within 1e-9.
  std::vector<std::vector<double>> membership;
  // Objective value per iteration (WCSS for K-means, the fuzzy objective for
  // FCM); non-increasing by construction.
  std::vector<double> objective_trace;

  bool has_membership() const { return !membership.empty(); }
  bool labeled() const {
    return !labels.empty() &&
           std::all_of(labels.begin(), labels.end(), [](int l) { return l >= 0; });
  }
};

namespace detail {

inline double sq_dist(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

// k distinct task positions, chosen uniformly per seed.
inline std::vector<Vec3> seed_centers(const TaskTable& tasks, int k, std::uint64_t seed) {
  Rng rng(seed);
  auto picks = rng.sample_indices(tasks.size(), static_cast<std::size_t>(k));
  std::vector<Vec3> centers;
  centers.reserve(picks.size());
  for (auto i : picks) centers.push_back(tasks[i].position);
  return centers;
}

}  // namespace detail

inline double kmeans_objective(const TaskTable& tasks, const std::vector<Vec3>& centers,
                               const std::vector<int>& labels) {
  double obj = 0.0;
  for (const auto& t : tasks) {
    obj += detail::sq_dist(t.position, centers[static_cast<std::size_t>(labels[t.id])]);
  }
  return obj;
}

namespace detail {

// Single Lloyd run. Converges when no label changes; ties on distance break
// toward the lowest cluster index. A cluster that loses all members keeps its
// previous center.
inline ClusterAssignment kmeans_single(const TaskTable& tasks, int k, std::uint64_t seed,
                                       int max_iter) {
  ClusterAssignment a;
  a.k = k;
  a.centers = detail::seed_centers(tasks, k, seed);
  a.labels.assign(tasks.size(), -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (const auto& t : tasks) {
      int best = 0;
      double best_d = std::numeric_limits<double>::max();
      for (int c = 0; c < k; ++c) {
        const double d = detail::sq_dist(t.position, a.centers[static_cast<std::size_t>(c)]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (a.labels[t.id] != best) {
        a.labels[t.id] = best;
        changed = true;
      }
    }
    a.objective_trace.push_back(kmeans_objective(tasks, a.centers, a.labels));
    if (!changed) break;
    std::vector<Vec3> sums(static_cast<std::size_t>(k));
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (const auto& t : tasks) {
      auto c = static_cast<std::size_t>(a.labels[t.id]);
      sums[c] = sums[c] + t.position;
      counts[c] += 1;
    }
    for (std::size_t c = 0; c < sums.size(); ++c) {
      if (counts[c] > 0) a.centers[c] = sums[c] * (1.0 / counts[c]);
    }
  }
  return a;
}

}  // namespace detail

// K-means with seeded random restarts; the lowest-WCSS run wins (ties toward
// the earlier restart). Each restart draws k distinct tasks as initial
// centers from its own substream, so the whole call is deterministic per
// (seed, restarts).
inline ClusterAssignment kmeans(const TaskTable& tasks, int k, std::uint64_t seed,
                                int max_iter = 100, int restarts = 10) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");
  if (static_cast<int>(tasks.size()) < k) {
    throw std::invalid_argument("kmeans: fewer tasks (" + std::to_string(tasks.size()) +
                                ") than clusters (" + std::to_string(k) + ")");
  }
  ClusterAssignment best;
  double best_wcss = std::numeric_limits<double>::max();
  for (int r = 0; r < restarts; ++r) {
    ClusterAssignment a =
        detail::kmeans_single(tasks, k, mix_seed(seed, static_cast<std::uint64_t>(r)), max_iter);
    const double wcss = a.objective_trace.empty() ? 0.0 : a.objective_trace.back();
    if (wcss < best_wcss) {
      best_wcss = wcss;
      best = std::move(a);
    }
  }
  return best;
}

struct FcmParams {
  double fuzzifier_m = 2.0;
  double tol = 1e-6;
  int max_iter = 200;
};

// Membership row for one point given the current centers. Applies the
// standard singularity rule: a point sitting on a center gets membership 1
// for the first such center.
inline std::vector<double> fcm_membership_row(const Vec3& p, const std::vector<Vec3>& centers,
                                              double fuzzifier_m) {
  const std::size_t k = centers.size();
  std::vector<double> dist(k);
  for (std::size_t c = 0; c < k; ++c) dist[c] = std::sqrt(detail::sq_dist(p, centers[c]));
  std::vector<double> row(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    if (dist[c] == 0.0) {
      row.assign(k, 0.0);
      row[c] = 1.0;
      return row;
    }
  }
  const double expo = 2.0 / (fuzzifier_m - 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    double denom = 0.0;
    for (std::size_t c = 0; c < k; ++c) denom += std::pow(dist[j] / dist[c], expo);
    row[j] = 1.0 / denom;
  }
  return row;
}

inline double fcm_objective(const TaskTable& tasks, const std::vector<Vec3>& centers,
                            const std::vector<std::vector<double>>& membership,
                            double fuzzifier_m) {
  double obj = 0.0;
  for (const auto& t : tasks) {
    for (std::size_t c = 0; c < centers.size(); ++c) {
      obj += std::pow(membership[static_cast<std::size_t>(t.id)][c], fuzzifier_m) *
             detail::sq_dist(t.position, centers[c]);
    }
  }
  return obj;
}

// Fuzzy C-Means with alternating membership/center updates, stopping when the
// largest center shift drops below tol. Labels are left unset; apply
// assign_max or assign_roulette afterwards. The returned membership matrix is
// recomputed against the returned centers, so the two are always consistent.
inline ClusterAssignment fcm(const TaskTable& tasks, int k, std::uint64_t seed,
                             const FcmParams& params = {},
                             const std::vector<Vec3>* initial_centers = nullptr) {
  if (params.fuzzifier_m <= 1.0) throw std::invalid_argument("fcm: fuzzifier m must be > 1");
  if (k < 1) throw std::invalid_argument("fcm: k must be >= 1");
  if (static_cast<int>(tasks.size()) < k) {
    throw std::invalid_argument("fcm: fewer tasks than clusters");
  }
  ClusterAssignment a;
  a.k = k;
  if (initial_centers) {
    if (static_cast<int>(initial_centers->size()) != k) {
      throw std::invalid_argument("fcm: initial_centers size != k");
    }
    a.centers = *initial_centers;
  } else {
    a.centers = detail::seed_centers(tasks, k, seed);
  }
  a.labels.assign(tasks.size(), -1);
  a.membership.assign(tasks.size(), std::vector<double>(static_cast<std::size_t>(k), 0.0));

  for (int iter = 0; iter < params.max_iter; ++iter) {
    for (const auto& t : tasks) {
      a.membership[static_cast<std::size_t>(t.id)] =
          fcm_membership_row(t.position, a.centers, params.fuzzifier_m);
    }
    double max_shift = 0.0;
    for (int c = 0; c < k; ++c) {
      Vec3 num;
      double den = 0.0;
      for (const auto& t : tasks) {
        const double w =
            std::pow(a.membership[static_cast<std::size_t>(t.id)][static_cast<std::size_t>(c)],
                     params.fuzzifier_m);
        num = num + t.position * w;
        den += w;
      }
      if (den > 0.0) {
        const Vec3 next = num * (1.0 / den);
        max_shift = std::max(max_shift,
                             std::sqrt(detail::sq_dist(next, a.centers[static_cast<std::size_t>(c)])));
        a.centers[static_cast<std::size_t>(c)] = next;
      }
    }
    a.objective_trace.push_back(fcm_objective(tasks, a.centers, a.membership, params.fuzzifier_m));
    if (max_shift < params.tol) break;
  }
  // Final sync so membership reflects the returned centers.
  for (const auto& t : tasks) {
    a.membership[static_cast<std::size_t>(t.id)] =
        fcm_membership_row(t.position, a.centers, params.fuzzifier_m);
  }
  a.objective_trace.push_back(fcm_objective(tasks, a.centers, a.membership, params.fuzzifier_m));
  return a;
}

// Labels every task with its argmax membership; ties break toward the lowest
// cluster index.
inline void assign_max(ClusterAssignment& a) {
  if (!a.has_membership()) throw std::invalid_argument("assign_max: membership matrix required");
  for (std::size_t i = 0; i < a.membership.size(); ++i) {
    const auto& row = a.membership[i];
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] > row[best]) best = c;
    }
    a.labels[i] = static_cast<int>(best);
  }
}

// Samples each task's label with probability equal to its membership.
inline void assign_roulette(ClusterAssignment& a, std::uint64_t seed) {
  if (!a.has_membership()) {
    throw std::invalid_argument("assign_roulette: membership matrix required");
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < a.membership.size(); ++i) {
    const auto& row = a.membership[i];
    const double u = rng.uniform01();
    double cum = 0.0;
    int label = static_cast<int>(row.size()) - 1;
    for (std::size_t c = 0; c < row.size(); ++c) {
      cum += row[c];
      if (u < cum) {
        label = static_cast<int>(c);
        break;
      }
    }
    a.labels[i] = label;
  }
}

// Vehicle v takes cluster pairing[v]. Minimizes total start-to-centroid
// distance: exact over all k! pairings for k <= 8, greedy (each vehicle in
// index order takes the nearest unused centroid) beyond.
inline std::vector<int> pair_clusters_to_vehicles(const ClusterAssignment& clusters,
                                                  const std::vector<VehicleConfig>& fleet) {
  const int k = clusters.k;
  if (static_cast<int>(fleet.size()) != k) {
    throw std::invalid_argument("pair_clusters_to_vehicles: fleet size != cluster count");
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  if (k <= 8) {
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::max();
    do {
      double c = 0.0;
      for (int v = 0; v < k; ++v) {
        c += segment_distance(fleet[static_cast<std::size_t>(v)].start,
                              clusters.centers[static_cast<std::size_t>(perm[v])]);
      }
      if (c < best_cost) {
        best_cost = c;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  for (int v = 0; v < k; ++v) {
    int pick = -1;
    double pick_d = std::numeric_limits<double>::max();
    for (int c = 0; c < k; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      const double d = segment_distance(fleet[static_cast<std::size_t>(v)].start,
                                        clusters.centers[static_cast<std::size_t>(c)]);
      if (d < pick_d) {
        pick_d = d;
        pick = c;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    perm[static_cast<std::size_t>(v)] = pick;
  }
  return perm;
}

// Relabels so that cluster index == vehicle index under the given pairing.
inline ClusterAssignment apply_pairing(const ClusterAssignment& clusters,
                                       const std::vector<int>& cluster_of_vehicle) {
  ClusterAssignment out = clusters;
  std::vector<int> new_index(static_cast<std::size_t>(clusters.k), -1);
  for (std::size_t v = 0; v < cluster_of_vehicle.size(); ++v) {
    new_index[static_cast<std::size_t>(cluster_of_vehicle[v])] = static_cast<int>(v);
  }
  for (std::size_t v = 0; v < cluster_of_vehicle.size(); ++v) {
    out.centers[v] = clusters.centers[static_cast<std::size_t>(cluster_of_vehicle[v])];
  }
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    if (clusters.labels[i] >= 0) {
      out.labels[i] = new_index[static_cast<std::size_t>(clusters.labels[i])];
    }
  }
  if (clusters.has_membership()) {
    for (std::size_t i = 0; i < out.membership.size(); ++i) {
      for (int v = 0; v < clusters.k; ++v) {
        out.membership[i][static_cast<std::size_t>(v)] =
            clusters.membership[i][static_cast<std::size_t>(cluster_of_vehicle[v])];
      }
    }
  }
  return out;
}

// Task id lists per cluster, ids ascending within each cluster.
inline std::vector<std::vector<int>> cluster_task_lists(const ClusterAssignment& a,
                                                        const TaskTable& tasks) {
  std::vector<std::vector<int>> lists(static_cast<std::size_t>(a.k));
  for (const auto& t : tasks) {
    const int label = a.labels[static_cast<std::size_t>(t.id)];
    if (label < 0 || label >= a.k) {
      throw std::invalid_argument("cluster_task_lists: task " + std::to_string(t.id) +
                                  " has no valid label");
    }
    lists[static_cast<std::size_t>(label)].push_back(t.id);
  }
  return lists;
}

// CSV export: task_id,cluster,label_policy,membership_0..k-1
inline std::string assignment_csv(const ClusterAssignment& a, const std::string& policy) {
  std::string out = "task_id,cluster,label_policy";
  for (int c = 0; c < a.k; ++c) out += ",membership_" + std::to_string(c);
  out += "\n";
  char buf[64];
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(a.labels[i]) + "," + policy;
    for (int c = 0; c < a.k; ++c) {
      const double m = a.has_membership() ? a.membership[i][static_cast<std::size_t>(c)]
                       : (a.labels[i] == c ? 1.0 : 0.0);
      std::snprintf(buf, sizeof buf, ",%.9f", m);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace fleethfc
