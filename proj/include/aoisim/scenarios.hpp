#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aoisim/trainer.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

enum class SweepKind {
  None,
  NodeY,         // vertical position of node 0
  EnergyQuanta,  // quanta capacity of every node, battery scaled with it
  Horizon,       // episode deadline tau
  Density,       // node layout interpolated between dense and sparse anchors
};

struct Scenario {
  std::string name;
  EnvSpec env;  // the base point; Density keeps the dense layout here
  SweepKind sweep = SweepKind::None;
  std::vector<int> sweep_values;  // Density stores step indices 0..steps-1
  std::vector<Cell> sparse_cells;  // Density only: the spread-out anchors
  std::vector<std::string> policies;
  int eval_episodes = 1000;
  std::optional<TrainerConfig> train_config;
  std::string notes;
};

// The five experiment setups on the 11x11 grid plus desk-scale micro
// variants of each (micro1..micro5) sized so exact solving and CI-speed
// training are possible.
std::vector<Scenario> builtin_scenarios();

// Throws ConfigError for unknown names; the message lists what exists.
Scenario find_scenario(const std::string& name);

// The env at one sweep point. For None the index must be 0 and the base env
// comes back unchanged.
EnvSpec apply_sweep(const Scenario& scenario, int value_index);

// Node layouts linearly interpolated per node from the scenario's dense
// layout to its sparse anchors, rounded to the nearest cell, endpoints exact.
std::vector<EnvSpec> density_sweep_specs(const Scenario& base, int steps);

// Human-readable label of one sweep point, used in CSV sweep_value columns.
std::string sweep_label(const Scenario& scenario, int value_index);

}  // namespace aoisim
