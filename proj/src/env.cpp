#include "aoisim/env.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "aoisim/errors.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

double channel_gain(const RadioParams& radio, const GridSpec& grid,
                    Cell uav_cell, Cell node_cell) {
  const auto pu = cell_center(grid, uav_cell);
  const auto pn = cell_center(grid, node_cell);
  const double dx = pu[0] - pn[0];
  const double dy = pu[1] - pn[1];
  const double h = radio.uav_height_m;
  return radio.ref_gain / (h * h + dx * dx + dy * dy);
}

double transmission_energy_j(const RadioParams& radio, double gain) {
  return radio.noise_power_w / gain *
         (std::exp2(radio.packet_bits / radio.bandwidth_hz) - 1.0);
}

namespace {

// Quanta counts come out of a chain of divisions; values within one part in
// 1e9 of an integer are that integer, not the next one up.
double snap_ceil(double x) {
  return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)));
}

double raw_quanta(const RadioParams& radio, const NodeConfig& node,
                  double gain) {
  return static_cast<double>(node.quanta_capacity) / node.battery_capacity_j *
         transmission_energy_j(radio, gain);
}

}  // namespace

std::int64_t required_quanta(const RadioParams& radio, const NodeConfig& node,
                             double gain, std::int64_t max_quanta) {
  if (!(gain > 0.0))
    throw std::invalid_argument("required_quanta: gain must be positive");
  if (node.quanta_capacity < 1)
    throw UnreachableTransmissionError(
        "required_quanta: node has zero quanta capacity");
  const double raw = raw_quanta(radio, node, gain);
  if (!(raw <= static_cast<double>(max_quanta)))
    throw UnreachableTransmissionError(
        "required_quanta: " + std::to_string(raw) + " quanta exceeds cap " +
        std::to_string(max_quanta));
  return static_cast<std::int64_t>(snap_ceil(raw));
}

double calibrated_ref_gain(const RadioParams& radio,
                           double energy_slope_j_per_m2) {
  return radio.noise_power_w *
         (std::exp2(radio.packet_bits / radio.bandwidth_hz) - 1.0) /
         energy_slope_j_per_m2;
}

Cell move_cell(const GridSpec& grid, Cell cell, Move movement) {
  Cell target = cell;
  switch (movement) {
    case Move::North: target.iy += 1; break;
    case Move::South: target.iy -= 1; break;
    case Move::East: target.ix += 1; break;
    case Move::West: target.ix -= 1; break;
    case Move::Idle: break;
  }
  return inside(grid, target) ? target : cell;
}

bool is_terminal(const EnvSpec& spec, const SystemState& state) {
  return state.uav.cell == spec.final_cell || state.slot > spec.horizon;
}

bool can_schedule(const EnvSpec& spec, const SystemState& state, int node) {
  const NodeConfig& cfg = spec.nodes[node];
  const int energy = state.nodes[node].energy_quanta;
  if (cfg.quanta_capacity < 1 || energy < 1) return false;
  const double gain =
      channel_gain(spec.radio, spec.grid, state.uav.cell, cfg.cell);
  // Compare the snapped count, still as a double: a transmission that needs
  // exactly the full battery is allowed, and absurd distances cannot overflow.
  const double snapped = snap_ceil(raw_quanta(spec.radio, cfg, gain));
  if (!(snapped <= static_cast<double>(cfg.quanta_capacity))) return false;
  return static_cast<std::int64_t>(snapped) <= energy;
}

std::vector<Action> feasible_actions(const EnvSpec& spec,
                                     const SystemState& state) {
  if (is_terminal(spec, state))
    throw std::logic_error("feasible_actions: state is terminal");

  // Moves left after this slot's move; the post-move cell must still reach
  // the final cell within them.
  const int remaining_after = spec.horizon - state.slot;
  std::vector<Move> moves;
  for (Move v : kMoveOrder) {
    const Cell c = move_cell(spec.grid, state.uav.cell, v);
    if (manhattan_cells(c, spec.final_cell) <= remaining_after)
      moves.push_back(v);
  }
  if (moves.empty())
    throw std::logic_error(
        "feasible_actions: empty feasible set (EnvSpec invariant violated)");

  std::vector<int> schedules{0};
  for (int m = 0; m < spec.num_nodes(); ++m)
    if (can_schedule(spec, state, m)) schedules.push_back(m + 1);

  std::vector<Action> out;
  out.reserve(moves.size() * schedules.size());
  for (Move v : moves)
    for (int w : schedules) out.push_back(Action{v, w});
  return out;
}

std::vector<std::uint8_t> feasible_mask(const EnvSpec& spec,
                                        const SystemState& state) {
  std::vector<std::uint8_t> mask(spec.num_actions(), 0);
  for (const Action& a : feasible_actions(spec, state))
    mask[action_index(a, spec.num_nodes())] = 1;
  return mask;
}

double instantaneous_cost(const EnvSpec& spec, const SystemState& state) {
  double cost = 0.0;
  for (int m = 0; m < spec.num_nodes(); ++m)
    cost += spec.nodes[m].weight * state.nodes[m].aoi;
  return cost;
}

StepResult step(const EnvSpec& spec, const SystemState& state,
                const Action& action) {
  if (is_terminal(spec, state))
    throw InfeasibleActionError("step: state is terminal");
  const Cell moved = move_cell(spec.grid, state.uav.cell, action.movement);
  if (manhattan_cells(moved, spec.final_cell) > spec.horizon - state.slot)
    throw InfeasibleActionError("step: movement strands the UAV");
  if (action.schedule < 0 || action.schedule > spec.num_nodes())
    throw InfeasibleActionError("step: schedule index out of range");
  if (action.schedule > 0 && !can_schedule(spec, state, action.schedule - 1))
    throw InfeasibleActionError("step: scheduled node lacks battery");

  StepResult r{state, instantaneous_cost(spec, state)};
  SystemState& next = r.next;

  if (action.schedule > 0) {
    const int m = action.schedule - 1;
    // Energy accounting uses the pre-move UAV cell.
    const double gain =
        channel_gain(spec.radio, spec.grid, state.uav.cell, spec.nodes[m].cell);
    next.nodes[m].energy_quanta -=
        static_cast<int>(required_quanta(spec.radio, spec.nodes[m], gain));
    next.nodes[m].aoi = 1;
  }
  for (int m = 0; m < spec.num_nodes(); ++m) {
    if (m == action.schedule - 1) continue;
    next.nodes[m].aoi = std::min(spec.nodes[m].aoi_cap, next.nodes[m].aoi + 1);
  }

  next.uav.cell = moved;
  next.slot = state.slot + 1;
  next.uav.slack = (spec.horizon - next.slot + 1) -
                   manhattan_cells(next.uav.cell, spec.final_cell);
  return r;
}

SystemState initial_state(const EnvSpec& spec) {
  SystemState s;
  const int count = spec.num_nodes();
  s.nodes.resize(count);
  for (int m = 0; m < count; ++m) {
    const int quanta = spec.initial_quanta.empty() ? spec.nodes[m].quanta_capacity
                                                   : spec.initial_quanta[m];
    const int aoi = spec.initial_aoi.empty() ? 1 : spec.initial_aoi[m];
    s.nodes[m] = NodeState{quanta, aoi};
  }
  s.uav.cell = spec.start_cell;
  s.uav.slack =
      spec.horizon - manhattan_cells(spec.start_cell, spec.final_cell);
  s.slot = 1;
  return s;
}

EpisodeResult run_episode(const EnvSpec& spec, Policy& policy,
                          std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  policy.reset();
  EpisodeResult out;
  SystemState s = initial_state(spec);
  while (!is_terminal(spec, s)) {
    const std::vector<Action> feasible = feasible_actions(spec, s);
    const Action a = policy.act(spec, s, feasible, rng);
    StepResult r = step(spec, s, a);
    out.trace.push_back(Transition{s, a, r.cost});
    out.total_cost += r.cost;
    s = std::move(r.next);
  }
  out.final_state = std::move(s);
  return out;
}

}  // namespace aoisim
