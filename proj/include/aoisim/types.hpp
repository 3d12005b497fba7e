#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace aoisim {

struct Cell {
  int ix = 0;
  int iy = 0;
  bool operator==(const Cell&) const = default;
};

inline int manhattan_cells(Cell a, Cell b) {
  return std::abs(a.ix - b.ix) + std::abs(a.iy - b.iy);
}

// Squared Euclidean distance in cell-index units; exact integer arithmetic.
inline long long cell_dist2(Cell a, Cell b) {
  const long long dx = a.ix - b.ix;
  const long long dy = a.iy - b.iy;
  return dx * dx + dy * dy;
}

struct GridSpec {
  int num_cells_x = 1;
  int num_cells_y = 1;
  double x_spacing = 1.0;  // meters between adjacent cell centers
  double y_spacing = 1.0;
  std::array<double, 2> origin{0.0, 0.0};  // center of cell (0,0), meters
};

inline bool inside(const GridSpec& g, Cell c) {
  return c.ix >= 0 && c.ix < g.num_cells_x && c.iy >= 0 && c.iy < g.num_cells_y;
}

inline std::array<double, 2> cell_center(const GridSpec& g, Cell c) {
  return {g.origin[0] + c.ix * g.x_spacing, g.origin[1] + c.iy * g.y_spacing};
}

struct RadioParams {
  double bandwidth_hz = 1e6;
  double packet_bits = 20e6;
  double noise_power_w = 1e-13;  // -100 dBm
  double ref_gain = 1.0;         // linear channel gain at 1 m
  double uav_height_m = 100.0;
};

struct NodeConfig {
  Cell cell;
  double battery_capacity_j = 1.0;
  int quanta_capacity = 1;  // 0 means the node can never transmit
  int aoi_cap = 50;
  double weight = 1.0;
};

struct NodeState {
  int energy_quanta = 0;
  int aoi = 1;
  bool operator==(const NodeState&) const = default;
};

struct UavState {
  Cell cell;
  int slack = 0;  // remaining slots minus Manhattan distance to the final cell
  bool operator==(const UavState&) const = default;
};

struct SystemState {
  std::vector<NodeState> nodes;
  UavState uav;
  int slot = 1;  // 1-based
  bool operator==(const SystemState&) const = default;
};

enum class Move : int { North = 0, South = 1, East = 2, West = 3, Idle = 4 };

// Canonical movement order used for iteration and tie-breaking everywhere.
inline constexpr std::array<Move, 5> kMoveOrder{Move::North, Move::South,
                                                Move::East, Move::West,
                                                Move::Idle};

char move_to_char(Move m);
Move move_from_char(char c);  // throws ConfigError on unknown letters

// schedule: 0 = no transmission, m in 1..M selects spec.nodes[m-1].
struct Action {
  Move movement = Move::Idle;
  int schedule = 0;
  bool operator==(const Action&) const = default;
};

struct EnvSpec {
  GridSpec grid;
  RadioParams radio;
  std::vector<NodeConfig> nodes;
  int horizon = 1;  // tau, in slots
  Cell start_cell;
  Cell final_cell;
  std::vector<int> initial_aoi;     // per node, defaults to all 1
  std::vector<int> initial_quanta;  // per node, defaults to quanta_capacity

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_actions() const { return 5 * (num_nodes() + 1); }
};

// Canonical dense action index: movement-major over (N,S,E,W,I) x (0..M).
inline int action_index(const Action& a, int num_nodes) {
  return static_cast<int>(a.movement) * (num_nodes + 1) + a.schedule;
}

inline Action action_from_index(int idx, int num_nodes) {
  const int w = num_nodes + 1;
  return Action{static_cast<Move>(idx / w), idx % w};
}

// Throws ConfigError if any type invariant is violated.
void validate(const EnvSpec& spec);

// Fills defaulted initial_aoi / initial_quanta vectors in place.
void apply_initial_defaults(EnvSpec& spec);

}  // namespace aoisim
