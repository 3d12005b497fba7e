#include "aoisim/scenarios.hpp"

#include <cmath>
#include <sstream>

#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"

namespace aoisim {
namespace {

GridSpec square_grid(int cells) {
  return GridSpec{cells, cells, 100.0, 100.0, {0.0, 0.0}};
}

NodeConfig quanta_node(Cell cell, int e_max, int aoi_cap, double weight) {
  return NodeConfig{cell, 1e-3 * e_max, e_max, aoi_cap, weight};
}

EnvSpec base_env(int cells, std::vector<NodeConfig> nodes, int horizon,
                 Cell start, Cell final_cell) {
  EnvSpec env;
  env.grid = square_grid(cells);
  env.radio.ref_gain = calibrated_ref_gain(env.radio);
  env.nodes = std::move(nodes);
  env.horizon = horizon;
  env.start_cell = start;
  env.final_cell = final_cell;
  validate(env);
  apply_initial_defaults(env);
  return env;
}

TrainerConfig full_training() {
  TrainerConfig config;
  config.episodes = 50'000;
  return config;
}

TrainerConfig micro_training(int episodes, int hidden) {
  TrainerConfig config;
  config.episodes = episodes;
  config.hidden_dim = hidden;
  config.replay_capacity = 50'000;
  return config;
}

Cell lerp_cell(Cell dense, Cell sparse, int index, int last) {
  const double t = last == 0 ? 0.0 : static_cast<double>(index) / last;
  return Cell{
      static_cast<int>(std::llround(dense.ix + t * (sparse.ix - dense.ix))),
      static_cast<int>(std::llround(dense.iy + t * (sparse.iy - dense.iy)))};
}

std::vector<int> iota_values(int count) {
  std::vector<int> values(count);
  for (int i = 0; i < count; ++i) values[i] = i;
  return values;
}

}  // namespace

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> all;
  const Cell start{0, 5};
  const Cell finish{10, 5};

  {
    Scenario s;
    s.name = "scenario1";
    s.env = base_env(11, {quanta_node({5, 5}, 26, 50, 1.0)}, 10, start, finish);
    s.sweep = SweepKind::NodeY;
    s.sweep_values = {5, 6, 7, 8, 9, 10};
    s.policies = {"dqn"};
    s.train_config = full_training();
    s.notes =
        "Single node at (5, y). The deadline equals the ten moves the "
        "start-to-final crossing needs, so cost accrues over slots 1..arrival "
        "with no room for detours.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "scenario2";
    s.env = base_env(11,
                     {quanta_node({2, 10}, 5, 50, 0.5),
                      quanta_node({8, 10}, 5, 50, 0.5)},
                     16, start, finish);
    s.policies = {"dqn", "distance", "random"};
    s.train_config = full_training();
    s.notes = "Two nodes on the far edge, six slots of slack for detours.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "scenario3";
    s.env = base_env(11,
                     {quanta_node({5, 10}, 1, 100, 1.0 / 3),
                      quanta_node({0, 0}, 1, 100, 1.0 / 3),
                      quanta_node({0, 10}, 1, 100, 1.0 / 3)},
                     100, start, finish);
    s.sweep = SweepKind::EnergyQuanta;
    for (int p = 0; p <= 10; ++p) s.sweep_values.push_back(1 << p);
    s.policies = {"dqn", "distance", "random"};
    s.train_config = full_training();
    s.notes = "Battery sweep over powers of two at a fixed 1 mJ quantum.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "scenario4";
    s.env = base_env(11,
                     {quanta_node({5, 10}, 100, 100, 1.0 / 3),
                      quanta_node({0, 0}, 100, 100, 1.0 / 3),
                      quanta_node({0, 10}, 100, 100, 1.0 / 3)},
                     10, start, finish);
    s.sweep = SweepKind::Horizon;
    for (int tau = 10; tau <= 100; tau += 10) s.sweep_values.push_back(tau);
    s.policies = {"dqn", "distance", "random"};
    s.train_config = full_training();
    s.notes = "Deadline sweep with ample battery.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "scenario5";
    s.env = base_env(11,
                     {quanta_node({4, 4}, 100, 100, 1.0 / 3),
                      quanta_node({5, 6}, 100, 100, 1.0 / 3),
                      quanta_node({6, 4}, 100, 100, 1.0 / 3)},
                     100, start, finish);
    s.sweep = SweepKind::Density;
    s.sweep_values = iota_values(5);
    s.sparse_cells = {{0, 0}, {5, 10}, {0, 10}};
    s.policies = {"dqn", "distance", "random"};
    s.train_config = full_training();
    s.notes = "Node layout spreads from the clustered to the corner anchors.";
    all.push_back(std::move(s));
  }

  const Cell micro_start{0, 3};
  const Cell micro_finish{6, 3};
  {
    Scenario s;
    s.name = "micro1";
    s.env = base_env(7, {quanta_node({3, 3}, 6, 10, 1.0)}, 8, micro_start,
                     micro_finish);
    s.sweep = SweepKind::NodeY;
    s.sweep_values = {3, 4, 5, 6};
    s.policies = {"dqn"};
    s.eval_episodes = 200;
    s.train_config = micro_training(4000, 128);
    s.train_config->grad_steps_per_episode = 2;
    s.notes = "Desk-scale convergence study: node slides away from the "
              "start-final line as y grows.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "micro2";
    s.env = base_env(7,
                     {quanta_node({1, 5}, 5, 12, 0.5),
                      quanta_node({5, 5}, 5, 12, 0.5)},
                     12, micro_start, micro_finish);
    s.policies = {"dqn", "distance", "random", "dp"};
    s.eval_episodes = 1000;
    s.train_config = micro_training(6000, 128);
    s.train_config->grad_steps_per_episode = 2;
    s.notes = "Desk-scale two-node comparison; small enough for the exact "
              "solver to sit alongside the learned policies.";
    all.push_back(std::move(s));
  }
  const Cell tiny_start{0, 2};
  const Cell tiny_finish{4, 2};
  {
    Scenario s;
    s.name = "micro3";
    s.env = base_env(5,
                     {quanta_node({1, 3}, 1, 5, 1.0 / 3),
                      quanta_node({3, 3}, 1, 5, 1.0 / 3),
                      quanta_node({2, 1}, 1, 5, 1.0 / 3)},
                     10, tiny_start, tiny_finish);
    s.sweep = SweepKind::EnergyQuanta;
    s.sweep_values = {1, 2, 4};
    s.policies = {"dp", "distance", "random"};
    s.eval_episodes = 200;
    s.notes = "Battery sweep small enough to solve exactly at every point.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "micro4";
    s.env = base_env(5,
                     {quanta_node({1, 3}, 4, 5, 1.0 / 3),
                      quanta_node({3, 3}, 4, 5, 1.0 / 3),
                      quanta_node({2, 1}, 4, 5, 1.0 / 3)},
                     6, tiny_start, tiny_finish);
    s.sweep = SweepKind::Horizon;
    s.sweep_values = {6, 8, 10};
    s.policies = {"dp", "distance", "random"};
    s.eval_episodes = 200;
    s.notes = "Deadline sweep on the micro grid.";
    all.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "micro5";
    s.env = base_env(5,
                     {quanta_node({2, 2}, 2, 5, 1.0 / 3),
                      quanta_node({2, 3}, 2, 5, 1.0 / 3),
                      quanta_node({3, 2}, 2, 5, 1.0 / 3)},
                     10, tiny_start, tiny_finish);
    s.sweep = SweepKind::Density;
    s.sweep_values = iota_values(3);
    s.sparse_cells = {{0, 0}, {2, 4}, {0, 4}};
    s.policies = {"dp", "distance", "random"};
    s.eval_episodes = 200;
    s.notes = "Density sweep from clustered-on-the-line to the far corners.";
    all.push_back(std::move(s));
  }
  return all;
}

Scenario find_scenario(const std::string& name) {
  std::vector<Scenario> all = builtin_scenarios();
  for (Scenario& s : all)
    if (s.name == name) return std::move(s);
  std::ostringstream message;
  message << "unknown scenario \"" << name << "\"; available:";
  for (const Scenario& s : all) message << ' ' << s.name;
  throw ConfigError(message.str());
}

EnvSpec apply_sweep(const Scenario& scenario, int value_index) {
  if (scenario.sweep == SweepKind::None) {
    if (value_index != 0)
      throw ConfigError("scenario " + scenario.name + " has no sweep");
    return scenario.env;
  }
  if (value_index < 0 ||
      value_index >= static_cast<int>(scenario.sweep_values.size()))
    throw ConfigError("sweep index out of range for " + scenario.name);

  EnvSpec env = scenario.env;
  // Sweep points restart from default initial conditions.
  env.initial_aoi.clear();
  env.initial_quanta.clear();
  const int value = scenario.sweep_values[value_index];
  switch (scenario.sweep) {
    case SweepKind::NodeY:
      env.nodes.at(0).cell.iy = value;
      break;
    case SweepKind::EnergyQuanta:
      for (NodeConfig& node : env.nodes) {
        const double quantum = node.battery_capacity_j / node.quanta_capacity;
        node.quanta_capacity = value;
        node.battery_capacity_j = quantum * value;
      }
      break;
    case SweepKind::Horizon:
      env.horizon = value;
      break;
    case SweepKind::Density: {
      const int last = static_cast<int>(scenario.sweep_values.size()) - 1;
      if (scenario.sparse_cells.size() != env.nodes.size())
        throw ConfigError("density scenario needs one sparse anchor per node");
      for (std::size_t m = 0; m < env.nodes.size(); ++m)
        env.nodes[m].cell = lerp_cell(scenario.env.nodes[m].cell,
                                      scenario.sparse_cells[m], value, last);
      break;
    }
    case SweepKind::None:
      break;
  }
  validate(env);
  apply_initial_defaults(env);
  return env;
}

std::vector<EnvSpec> density_sweep_specs(const Scenario& base, int steps) {
  if (steps < 2) throw ConfigError("density sweep needs at least two steps");
  if (base.sparse_cells.size() != base.env.nodes.size())
    throw ConfigError("density scenario needs one sparse anchor per node");
  std::vector<EnvSpec> specs;
  specs.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    EnvSpec env = base.env;
    env.initial_aoi.clear();
    env.initial_quanta.clear();
    for (std::size_t m = 0; m < env.nodes.size(); ++m)
      env.nodes[m].cell = lerp_cell(base.env.nodes[m].cell,
                                    base.sparse_cells[m], i, steps - 1);
    validate(env);
    apply_initial_defaults(env);
    specs.push_back(std::move(env));
  }
  return specs;
}

std::string sweep_label(const Scenario& scenario, int value_index) {
  if (scenario.sweep == SweepKind::None) return "-";
  if (value_index < 0 ||
      value_index >= static_cast<int>(scenario.sweep_values.size()))
    throw ConfigError("sweep index out of range for " + scenario.name);
  return std::to_string(scenario.sweep_values[value_index]);
}

}  // namespace aoisim
