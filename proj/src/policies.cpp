#include "aoisim/policies.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "aoisim/env.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

namespace {

bool schedule_feasible(std::span<const Action> feasible, int schedule) {
  for (const Action& a : feasible)
    if (a.schedule == schedule) return true;
  return false;
}

}  // namespace

Action distance_based_act(const EnvSpec& spec, const SystemState& state,
                          std::span<const Action> feasible,
                          double schedule_range_cells,
                          bool fallback_to_next_closest) {
  const int M = spec.num_nodes();
  const double range2 = schedule_range_cells * schedule_range_cells;

  // Nodes ordered by (distance, index); pick the first chargeable one within
  // range, or only the very closest unless the fallback variant is on.
  std::vector<int> by_distance(M);
  for (int m = 0; m < M; ++m) by_distance[m] = m;
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
    return cell_dist2(state.uav.cell, spec.nodes[a].cell) <
           cell_dist2(state.uav.cell, spec.nodes[b].cell);
  });

  int schedule = 0;
  for (int m : by_distance) {
    const double d2 =
        static_cast<double>(cell_dist2(state.uav.cell, spec.nodes[m].cell));
    if (!(d2 < range2)) break;
    if (schedule_feasible(feasible, m + 1)) {
      schedule = m + 1;
      break;
    }
    if (!fallback_to_next_closest) break;
  }

  int oldest = 0;
  for (int m = 1; m < M; ++m)
    if (state.nodes[m].aoi > state.nodes[oldest].aoi) oldest = m;

  Move best_move = Move::Idle;
  long long best_d2 = std::numeric_limits<long long>::max();
  for (const Action& a : feasible) {
    if (a.schedule != schedule) continue;
    const Cell c = move_cell(spec.grid, state.uav.cell, a.movement);
    const long long d2 = cell_dist2(c, spec.nodes[oldest].cell);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_move = a.movement;
    }
  }
  return Action{best_move, schedule};
}

Action random_walk_act(const EnvSpec&, const SystemState&,
                       std::span<const Action> feasible,
                       std::mt19937_64& rng) {
  return feasible[uniform_index(rng, feasible.size())];
}

Action DistancePolicy::act(const EnvSpec& spec, const SystemState& state,
                           std::span<const Action> feasible,
                           std::mt19937_64&) {
  return distance_based_act(spec, state, feasible, range_, fallback_);
}

Action RandomWalkPolicy::act(const EnvSpec& spec, const SystemState& state,
                             std::span<const Action> feasible,
                             std::mt19937_64& rng) {
  return random_walk_act(spec, state, feasible, rng);
}

}  // namespace aoisim
