#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoisim/dp.hpp"
#include "aoisim/policy.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

// Linear decay from eps_start to eps_end over the first decay_fraction of the
// run (0-based episode index): episode 0 sees eps_start, every episode past
// the decay window sees eps_end.
double epsilon_at(double eps_start, double eps_end, double decay_fraction,
                  int total_episodes, int episode_index);

// Dense state-action value table over the full lattice. Values are costs.
struct QTable {
  StateIndexer indexer;
  int num_actions = 0;
  std::vector<double> q;
  double learning_rate = 0.1;  // beta
  double discount = 1.0;       // gamma

  double& at(std::uint64_t state_index, int action_index) {
    return q[state_index * num_actions + action_index];
  }
  double at(std::uint64_t state_index, int action_index) const {
    return q[state_index * num_actions + action_index];
  }
};

// Throws ConfigError unless 0 < learning_rate <= 1 and 0 <= discount <= 1.
QTable make_qtable(const EnvSpec& spec, double learning_rate,
                   double discount = 1.0,
                   std::uint64_t state_cap = kDefaultStateCap);

// One application of the update
//   Q(s,a) += beta * (c + gamma * min_{a' feasible} Q(s',a') - Q(s,a));
// an empty feasible_next (terminal successor) drops the bootstrap term.
void tabular_q_update(QTable& table, const EnvSpec& spec,
                      const SystemState& state, const Action& action,
                      double cost, const SystemState& next,
                      std::span<const Action> feasible_next);

struct TabularTrainConfig {
  int episodes = 2000;
  double learning_rate = 0.5;
  double discount = 1.0;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.5;
  std::uint64_t seed = 1;
  std::uint64_t state_cap = kDefaultStateCap;
};

void validate(const TabularTrainConfig& config);

struct TabularTrainResult {
  QTable table;
  std::vector<double> episode_costs;
};

// Online epsilon-greedy Q-learning: one tabular_q_update per transition.
TabularTrainResult train_tabular(const EnvSpec& spec,
                                 const TabularTrainConfig& config);

// Greedy over the supplied feasible set; ties take the smaller canonical
// action index.
class TabularQPolicy final : public Policy {
 public:
  explicit TabularQPolicy(const QTable& table) : table_(&table) {}
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override;

 private:
  const QTable* table_;
};

}  // namespace aoisim
