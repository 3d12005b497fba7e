#pragma once

#include <cstdint>
#include <vector>

#include "aoisim/policy.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

inline constexpr std::int64_t kMaxRequiredQuanta = 1'000'000'000'000'000;

// Line-of-sight channel power gain between the UAV (at fixed height) above
// uav_cell and a node at node_cell: ref_gain / (h^2 + planar_distance^2).
double channel_gain(const RadioParams& radio, const GridSpec& grid,
                    Cell uav_cell, Cell node_cell);

// Energy in joules to push one update packet through a channel with the given
// gain within one unit slot (Shannon rate inverted for the packet size).
double transmission_energy_j(const RadioParams& radio, double gain);

// Integer energy quanta consumed by one transmission:
// ceil(quanta_capacity / battery_capacity_j * transmission_energy).
// Throws UnreachableTransmissionError beyond max_quanta.
std::int64_t required_quanta(const RadioParams& radio, const NodeConfig& node,
                             double gain,
                             std::int64_t max_quanta = kMaxRequiredQuanta);

// ref_gain that makes the transmission energy equal
// energy_slope_j_per_m2 * (h^2 + d^2). The default slope reproduces the
// reference quanta counts of the stock 11x11 setup (26 at five cells,
// 5 at two cells, 1 mJ quantum).
double calibrated_ref_gain(const RadioParams& radio,
                           double energy_slope_j_per_m2 = 1e-7);

// One-cell move; targets outside the grid collapse to "stay".
Cell move_cell(const GridSpec& grid, Cell cell, Move movement);

bool is_terminal(const EnvSpec& spec, const SystemState& state);

// True iff node m (0-based) has enough battery to transmit to the UAV at its
// current cell. Nodes with zero quanta capacity never transmit.
bool can_schedule(const EnvSpec& spec, const SystemState& state, int node);

// All (movement, schedule) pairs that keep the final cell reachable in the
// remaining slots and respect node batteries. Canonical order, never empty
// for non-terminal states reachable under feasible play.
std::vector<Action> feasible_actions(const EnvSpec& spec,
                                     const SystemState& state);

// Same set as a dense 0/1 mask over canonical action indices.
std::vector<std::uint8_t> feasible_mask(const EnvSpec& spec,
                                        const SystemState& state);

// Weighted sum-AoI of the given state: sum_m weight_m * aoi_m.
double instantaneous_cost(const EnvSpec& spec, const SystemState& state);

struct StepResult {
  SystemState next;
  double cost;  // instantaneous cost of the pre-transition state
};

// Applies one slot of dynamics. Throws InfeasibleActionError if the action is
// not in feasible_actions(spec, state).
StepResult step(const EnvSpec& spec, const SystemState& state,
                const Action& action);

SystemState initial_state(const EnvSpec& spec);

struct Transition {
  SystemState state;
  Action action;
  double cost;
};

struct EpisodeResult {
  double total_cost = 0.0;
  std::vector<Transition> trace;
  SystemState final_state;
};

// Rolls one episode from the initial state until termination. The policy owns
// no generator; it draws from the episode's seeded engine.
EpisodeResult run_episode(const EnvSpec& spec, Policy& policy,
                          std::uint64_t rng_seed);

}  // namespace aoisim
