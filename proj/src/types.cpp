#include "aoisim/types.hpp"

#include <string>

#include "aoisim/errors.hpp"

namespace aoisim {

char move_to_char(Move m) {
  switch (m) {
    case Move::North: return 'N';
    case Move::South: return 'S';
    case Move::East: return 'E';
    case Move::West: return 'W';
    case Move::Idle: return 'I';
  }
  return '?';
}

Move move_from_char(char c) {
  switch (c) {
    case 'N': return Move::North;
    case 'S': return Move::South;
    case 'E': return Move::East;
    case 'W': return Move::West;
    case 'I': return Move::Idle;
  }
  throw ConfigError(std::string("unknown movement letter: ") + c);
}

void apply_initial_defaults(EnvSpec& spec) {
  const int m = spec.num_nodes();
  if (spec.initial_aoi.empty()) spec.initial_aoi.assign(m, 1);
  if (spec.initial_quanta.empty()) {
    spec.initial_quanta.resize(m);
    for (int i = 0; i < m; ++i)
      spec.initial_quanta[i] = spec.nodes[i].quanta_capacity;
  }
}

namespace {

void fail(const std::string& what) { throw ConfigError("EnvSpec: " + what); }

}  // namespace

void validate(const EnvSpec& spec) {
  const GridSpec& g = spec.grid;
  if (g.num_cells_x < 1 || g.num_cells_y < 1) fail("grid must be at least 1x1");
  if (!(g.x_spacing > 0.0) || !(g.y_spacing > 0.0))
    fail("cell spacing must be positive");

  const RadioParams& r = spec.radio;
  if (!(r.bandwidth_hz > 0.0) || !(r.packet_bits > 0.0) ||
      !(r.noise_power_w > 0.0) || !(r.ref_gain > 0.0) ||
      !(r.uav_height_m > 0.0))
    fail("radio parameters must all be strictly positive");

  if (spec.nodes.empty()) fail("at least one ground node is required");
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const NodeConfig& n = spec.nodes[i];
    const std::string id = "node " + std::to_string(i) + ": ";
    if (!inside(g, n.cell)) fail(id + "cell outside grid");
    if (!(n.battery_capacity_j > 0.0)) fail(id + "battery capacity must be positive");
    if (n.quanta_capacity < 0) fail(id + "quanta capacity must be >= 0");
    if (n.aoi_cap < 1) fail(id + "AoI cap must be >= 1");
    if (!(n.weight > 0.0)) fail(id + "weight must be positive");
  }

  if (spec.horizon < 0) fail("horizon must be >= 0");
  if (!inside(g, spec.start_cell)) fail("start cell outside grid");
  if (!inside(g, spec.final_cell)) fail("final cell outside grid");
  if (manhattan_cells(spec.start_cell, spec.final_cell) > spec.horizon)
    fail("final cell unreachable within the horizon");

  const int m = spec.num_nodes();
  if (!spec.initial_aoi.empty()) {
    if (static_cast<int>(spec.initial_aoi.size()) != m)
      fail("initial_aoi length must match the node count");
    for (int i = 0; i < m; ++i)
      if (spec.initial_aoi[i] < 1 || spec.initial_aoi[i] > spec.nodes[i].aoi_cap)
        fail("initial_aoi out of [1, aoi_cap]");
  }
  if (!spec.initial_quanta.empty()) {
    if (static_cast<int>(spec.initial_quanta.size()) != m)
      fail("initial_quanta length must match the node count");
    for (int i = 0; i < m; ++i)
      if (spec.initial_quanta[i] < 0 ||
          spec.initial_quanta[i] > spec.nodes[i].quanta_capacity)
        fail("initial_quanta out of [0, quanta_capacity]");
  }
}

}  // namespace aoisim
