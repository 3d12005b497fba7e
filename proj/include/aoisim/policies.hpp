#pragma once

#include <random>
#include <span>

#include "aoisim/policy.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

// Schedules the closest node (Euclidean over cell indices) when it is
// strictly within schedule_range_cells and has the battery for it, then moves
// to shrink the distance to the node with the oldest data. All ties break by
// node index, then canonical movement order. Pure function of (spec, state).
// When fallback_to_next_closest is set, a drained closest node cedes its slot
// to the next-closest chargeable node inside the range.
Action distance_based_act(const EnvSpec& spec, const SystemState& state,
                          std::span<const Action> feasible,
                          double schedule_range_cells = 2.0,
                          bool fallback_to_next_closest = false);

// Uniform draw from the feasible set.
Action random_walk_act(const EnvSpec& spec, const SystemState& state,
                       std::span<const Action> feasible, std::mt19937_64& rng);

class DistancePolicy final : public Policy {
 public:
  explicit DistancePolicy(double schedule_range_cells = 2.0,
                          bool fallback_to_next_closest = false)
      : range_(schedule_range_cells), fallback_(fallback_to_next_closest) {}
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override;

 private:
  double range_;
  bool fallback_;
};

class RandomWalkPolicy final : public Policy {
 public:
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override;
};

}  // namespace aoisim
