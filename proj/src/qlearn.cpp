#include "aoisim/qlearn.hpp"

#include <algorithm>
#include <limits>

#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

double epsilon_at(double eps_start, double eps_end, double decay_fraction,
                  int total_episodes, int episode_index) {
  const double span = decay_fraction * (total_episodes - 1);
  if (span <= 0.0) return episode_index == 0 ? eps_start : eps_end;
  const double t = std::min(1.0, episode_index / span);
  return eps_start + (eps_end - eps_start) * t;
}

QTable make_qtable(const EnvSpec& spec, double learning_rate, double discount,
                   std::uint64_t state_cap) {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw ConfigError("make_qtable: learning_rate must be in (0, 1]");
  if (!(discount >= 0.0 && discount <= 1.0))
    throw ConfigError("make_qtable: discount must be in [0, 1]");
  QTable t{StateIndexer(spec, state_cap), spec.num_actions(), {},
           learning_rate, discount};
  t.q.assign(t.indexer.size() * static_cast<std::uint64_t>(t.num_actions),
             0.0);
  return t;
}

void tabular_q_update(QTable& table, const EnvSpec& spec,
                      const SystemState& state, const Action& action,
                      double cost, const SystemState& next,
                      std::span<const Action> feasible_next) {
  const int M = spec.num_nodes();
  double bootstrap = 0.0;
  if (!feasible_next.empty()) {
    const std::uint64_t sn = table.indexer.encode(next);
    double best = std::numeric_limits<double>::infinity();
    for (const Action& a : feasible_next)
      best = std::min(best, table.at(sn, action_index(a, M)));
    bootstrap = table.discount * best;
  }
  double& q = table.at(table.indexer.encode(state), action_index(action, M));
  q += table.learning_rate * (cost + bootstrap - q);
}

void validate(const TabularTrainConfig& config) {
  if (config.episodes < 1)
    throw ConfigError("TabularTrainConfig: episodes must be >= 1");
  if (!(config.learning_rate > 0.0 && config.learning_rate <= 1.0))
    throw ConfigError("TabularTrainConfig: learning_rate must be in (0, 1]");
  if (!(config.discount >= 0.0 && config.discount <= 1.0))
    throw ConfigError("TabularTrainConfig: discount must be in [0, 1]");
  if (!(config.epsilon_end >= 0.0 &&
        config.epsilon_end <= config.epsilon_start &&
        config.epsilon_start <= 1.0))
    throw ConfigError(
        "TabularTrainConfig: need 0 <= epsilon_end <= epsilon_start <= 1");
  if (!(config.epsilon_decay_fraction >= 0.0 &&
        config.epsilon_decay_fraction <= 1.0))
    throw ConfigError(
        "TabularTrainConfig: epsilon_decay_fraction must be in [0, 1]");
}

TabularTrainResult train_tabular(const EnvSpec& spec,
                                 const TabularTrainConfig& config) {
  validate(spec);
  validate(config);
  EnvSpec env = spec;
  apply_initial_defaults(env);

  TabularTrainResult out{
      make_qtable(env, config.learning_rate, config.discount,
                  config.state_cap),
      {}};
  out.episode_costs.reserve(config.episodes);
  std::mt19937_64 rng(derive_seed(config.seed, 1));

  for (int k = 0; k < config.episodes; ++k) {
    const double eps =
        epsilon_at(config.epsilon_start, config.epsilon_end,
                   config.epsilon_decay_fraction, config.episodes, k);
    double total = 0.0;
    SystemState s = initial_state(env);
    while (!is_terminal(env, s)) {
      const std::vector<Action> feasible = feasible_actions(env, s);
      Action a;
      if (uniform_real01(rng) < eps) {
        a = feasible[uniform_index(rng, feasible.size())];
      } else {
        const std::uint64_t si = out.table.indexer.encode(s);
        double best = std::numeric_limits<double>::infinity();
        a = feasible.front();
        for (const Action& cand : feasible) {
          const double q = out.table.at(si, action_index(cand, env.num_nodes()));
          if (q < best) {
            best = q;
            a = cand;
          }
        }
      }
      const StepResult r = step(env, s, a);
      const std::vector<Action> feasible_next =
          is_terminal(env, r.next) ? std::vector<Action>{}
                                   : feasible_actions(env, r.next);
      tabular_q_update(out.table, env, s, a, r.cost, r.next, feasible_next);
      total += r.cost;
      s = r.next;
    }
    out.episode_costs.push_back(total);
  }
  return out;
}

Action TabularQPolicy::act(const EnvSpec& spec, const SystemState& state,
                           std::span<const Action> feasible,
                           std::mt19937_64&) {
  const std::uint64_t si = table_->indexer.encode(state);
  double best = std::numeric_limits<double>::infinity();
  Action out = feasible.front();
  for (const Action& cand : feasible) {
    const double q = table_->at(si, action_index(cand, spec.num_nodes()));
    if (q < best) {
      best = q;
      out = cand;
    }
  }
  return out;
}

}  // namespace aoisim
