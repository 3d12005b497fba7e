#include <doctest.h>

#include <random>

#include "aoisim/dp.hpp"
#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"
#include "aoisim/qlearn.hpp"
#include "support/oracles.hpp"

using namespace aoisim;
using namespace aoisim::testing;

namespace {

EnvSpec micro_3x1() {
  EnvSpec spec;
  spec.grid = GridSpec{3, 1, 100.0, 100.0, {0.0, 0.0}};
  spec.radio.ref_gain = calibrated_ref_gain(spec.radio);
  spec.nodes = {milli_node({1, 0}, 3, 5)};
  spec.horizon = 4;
  spec.start_cell = {0, 0};
  spec.final_cell = {2, 0};
  apply_initial_defaults(spec);
  return spec;
}

}  // namespace

TEST_CASE("epsilon schedule pins both endpoints") {
  CHECK(epsilon_at(1.0, 0.05, 0.5, 1000, 0) == doctest::Approx(1.0));
  CHECK(epsilon_at(1.0, 0.05, 0.5, 1000, 500) == doctest::Approx(0.05));
  CHECK(epsilon_at(1.0, 0.05, 0.5, 1000, 999) == doctest::Approx(0.05));
  const double mid = epsilon_at(1.0, 0.0, 1.0, 101, 50);
  CHECK(mid == doctest::Approx(0.5));
  CHECK(epsilon_at(0.3, 0.3, 0.5, 10, 4) == doctest::Approx(0.3));
  // Degenerate runs still respect the endpoint contract.
  CHECK(epsilon_at(1.0, 0.1, 0.5, 1, 0) == doctest::Approx(1.0));
}

TEST_CASE("update with unit step and terminal successor overwrites with cost") {
  const EnvSpec spec = micro_3x1();
  QTable table = make_qtable(spec, 1.0);
  SystemState s = initial_state(spec);
  const Action a{Move::East, 0};
  table.at(table.indexer.encode(s), action_index(a, 1)) = 123.0;
  tabular_q_update(table, spec, s, a, 2.5, step(spec, s, a).next, {});
  CHECK(table.at(table.indexer.encode(s), action_index(a, 1)) == 2.5);
}

TEST_CASE("zero step size is rejected, tiny step changes nothing else") {
  const EnvSpec spec = micro_3x1();
  CHECK_THROWS_AS((void)make_qtable(spec, 0.0), ConfigError);
  CHECK_THROWS_AS((void)make_qtable(spec, 1.5), ConfigError);

  QTable table = make_qtable(spec, 0.5);
  const SystemState s = initial_state(spec);
  const Action a{Move::East, 0};
  const StepResult r = step(spec, s, a);
  const auto feasible_next = feasible_actions(spec, r.next);
  tabular_q_update(table, spec, s, a, r.cost, r.next, feasible_next);
  int touched = 0;
  for (double q : table.q) touched += q != 0.0;
  CHECK(touched == 1);
}

TEST_CASE("the printed hand update lands on 6") {
  const EnvSpec spec = micro_3x1();
  QTable table = make_qtable(spec, 0.5);
  const SystemState s = initial_state(spec);
  const Action a{Move::East, 0};
  const StepResult r = step(spec, s, a);
  const auto feasible_next = feasible_actions(spec, r.next);

  table.at(table.indexer.encode(s), action_index(a, 1)) = 4.0;
  const std::uint64_t sn = table.indexer.encode(r.next);
  for (const Action& cand : feasible_next)
    table.at(sn, action_index(cand, 1)) = 6.0;
  tabular_q_update(table, spec, s, a, 2.0, r.next, feasible_next);
  CHECK(table.at(table.indexer.encode(s), action_index(a, 1)) ==
        doctest::Approx(6.0));
}

TEST_CASE("tabular learning converges exactly to the DP optimum") {
  const EnvSpec spec = micro_3x1();
  const DpSolution dp = solve(spec);

  TabularTrainConfig config;
  config.episodes = 4000;
  config.learning_rate = 1.0;
  config.epsilon_start = 1.0;
  config.epsilon_end = 0.2;
  config.epsilon_decay_fraction = 0.5;
  config.seed = 7;
  const TabularTrainResult result = train_tabular(spec, config);
  CHECK(static_cast<int>(result.episode_costs.size()) == config.episodes);

  TabularQPolicy greedy(result.table);
  const EvalResult eval = evaluate_policy(spec, greedy, 4, 11);
  CHECK(eval.mean == dp.initial_value());
  CHECK(eval.stddev == 0.0);

  // The learned initial-state values match the exact cost-to-go.
  const std::uint64_t s0 = result.table.indexer.encode(initial_state(spec));
  double best = std::numeric_limits<double>::infinity();
  for (const Action& a : feasible_actions(spec, initial_state(spec)))
    best = std::min(best, result.table.at(s0, action_index(a, 1)));
  CHECK(best == dp.initial_value());
}

TEST_CASE("tabular training is seed-deterministic") {
  const EnvSpec spec = micro_3x1();
  TabularTrainConfig config;
  config.episodes = 200;
  config.seed = 42;
  const TabularTrainResult a = train_tabular(spec, config);
  const TabularTrainResult b = train_tabular(spec, config);
  CHECK(a.episode_costs == b.episode_costs);
  CHECK(a.table.q == b.table.q);
  config.seed = 43;
  const TabularTrainResult c = train_tabular(spec, config);
  CHECK(a.episode_costs != c.episode_costs);
}

TEST_CASE("tabular config validation") {
  TabularTrainConfig config;
  CHECK_NOTHROW(validate(config));
  config.epsilon_end = 0.5;
  config.epsilon_start = 0.2;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = {};
  config.episodes = 0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = {};
  config.discount = 1.2;
  CHECK_THROWS_AS(validate(config), ConfigError);
}
