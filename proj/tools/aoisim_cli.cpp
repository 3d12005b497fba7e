#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aoisim/bounds.hpp"
#include "aoisim/config.hpp"
#include "aoisim/csv.hpp"
#include "aoisim/dp.hpp"
#include "aoisim/env.hpp"
#include "aoisim/harness.hpp"
#include "aoisim/qnet.hpp"
#include "aoisim/rng.hpp"
#include "aoisim/scenarios.hpp"
#include "aoisim/trainer.hpp"

namespace {

using namespace aoisim;
namespace fs = std::filesystem;

struct CommonInputs {
  std::string scenario_name;
  std::string env_config;
  std::string trainer_config;
  std::string out_dir;
  std::string policy;
  std::string weights;
  std::uint64_t seed = 1;
  int episodes = 0;  // 0 keeps each command's default
};

void add_env_source(CLI::App* cmd, CommonInputs& in, bool required) {
  auto* scenario =
      cmd->add_option("--scenario", in.scenario_name, "builtin scenario name");
  auto* config =
      cmd->add_option("--config", in.env_config, "environment JSON file");
  scenario->excludes(config);
  if (required) {
    // one of the two must be present; checked after parsing
  }
  cmd->add_option("--seed", in.seed, "master seed");
}

// Scenario when named, otherwise a bare env wrapped in a sweep-less shell.
Scenario resolve_scenario(const CommonInputs& in) {
  if (!in.scenario_name.empty()) return find_scenario(in.scenario_name);
  if (in.env_config.empty())
    throw ConfigError("give --scenario or --config");
  Scenario s;
  s.name = fs::path(in.env_config).stem().string();
  s.env = load_env_spec(in.env_config);
  s.policies = {"distance", "random"};
  s.eval_episodes = 1000;
  return s;
}

TrainerConfig resolve_trainer(const CommonInputs& in, const Scenario& s) {
  TrainerConfig config;
  if (!in.trainer_config.empty())
    config = load_trainer_config(in.trainer_config);
  else if (s.train_config)
    config = *s.train_config;
  if (in.episodes > 0) config.episodes = in.episodes;
  config.seed = in.seed;
  return config;
}

fs::path ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) throw ConfigError("--out is required");
  fs::create_directories(out_dir);
  return fs::path(out_dir);
}

std::string file_label(const std::string& sweep_value) {
  return sweep_value == "-" ? "base" : sweep_value;
}

int cmd_train(const CommonInputs& in) {
  const Scenario scenario = resolve_scenario(in);
  const TrainerConfig config = resolve_trainer(in, scenario);
  const fs::path out = ensure_out_dir(in.out_dir);

  const TrainResult result = train(scenario.env, config);
  write_curve_csv((out / "curve.csv").string(), result.curve,
                  /*include_wall_ms=*/true);
  save_qnetwork(result.net, (out / "weights.txt").string());
  if (!result.eval_curve.empty())
    write_eval_curve_csv((out / "eval_curve.csv").string(), result.eval_curve);

  double last = 0.0;
  if (!result.curve.empty()) last = result.curve.back().total_cost;
  std::cout << "episodes," << result.curve.size() << "\n"
            << "final_cost," << csv_number(last) << "\n";
  return 0;
}

int cmd_evaluate(const CommonInputs& in) {
  const Scenario scenario = resolve_scenario(in);
  if (in.policy.empty()) throw ConfigError("--policy is required");
  const int episodes = in.episodes > 0 ? in.episodes : scenario.eval_episodes;

  std::unique_ptr<Policy> policy;
  if (in.policy == "dqn" && !in.weights.empty()) {
    policy = std::make_unique<DqnPolicy>(load_qnetwork(in.weights));
  } else {
    std::optional<TrainerConfig> train_config = scenario.train_config;
    if (!in.trainer_config.empty())
      train_config = load_trainer_config(in.trainer_config);
    policy = make_policy(in.policy, scenario.env, train_config,
                         derive_seed(in.seed, 0));
  }
  const EvalResult result =
      evaluate_policy(scenario.env, *policy, episodes, derive_seed(in.seed, 1));

  std::cout << "policy,episodes,mean_total,std\n"
            << in.policy << ',' << episodes << ',' << csv_number(result.mean)
            << ',' << csv_number(result.stddev) << "\n";
  if (!in.out_dir.empty()) {
    const fs::path out = ensure_out_dir(in.out_dir);
    std::ofstream file(out / "metrics.csv");
    file << "policy,sweep_value,mean_total,mean_per_slot,std,episodes\n"
         << in.policy << ",-," << csv_number(result.mean) << ",-,"
         << csv_number(result.stddev) << ',' << episodes << "\n";
  }
  return 0;
}

int cmd_compare(const CommonInputs& in) {
  Scenario scenario = resolve_scenario(in);
  if (in.episodes > 0) scenario.eval_episodes = in.episodes;
  if (!in.trainer_config.empty())
    scenario.train_config = load_trainer_config(in.trainer_config);
  const fs::path out = ensure_out_dir(in.out_dir);

  const MetricReport report = run_comparison(scenario, in.seed);
  {
    std::ofstream file(out / "metrics.csv");
    write_metrics_csv(file, report);
  }
  {
    std::ofstream file(out / "sweep_means.csv");
    write_sweep_means_csv(file, report);
  }
  for (const PolicyMetrics& row : report.rows) {
    if (row.learning_curve.empty()) continue;
    const std::string label = file_label(row.sweep_value);
    write_curve_csv(
        (out / ("curve_" + row.policy + "_" + label + ".csv")).string(),
        row.learning_curve, /*include_wall_ms=*/false);
    std::ofstream file(out /
                       ("convergence_" + row.policy + "_" + label + ".csv"));
    write_convergence_csv(file, row.learning_curve, 500);
  }
  std::cout << "rows," << report.rows.size() << "\n";
  return 0;
}

int cmd_dp_solve(const CommonInputs& in, bool dump_values) {
  const Scenario scenario = resolve_scenario(in);
  const fs::path out = ensure_out_dir(in.out_dir);

  const DpSolution solution = solve(scenario.env);
  std::cout << "initial_value," << csv_number(solution.initial_value()) << "\n";

  DpPolicy policy(solution);
  const EpisodeResult episode =
      run_episode(scenario.env, policy, derive_seed(in.seed, 0));
  write_trace_csv((out / "greedy_trace.csv").string(), scenario.env, episode);

  if (dump_values) {
    std::ofstream file(out / "values.csv");
    file << "state_index,value,best_action\n";
    for (std::uint64_t i = 0; i < solution.indexer.size(); ++i)
      file << i << ',' << csv_number(solution.value[i]) << ','
           << solution.best_action[i] << "\n";
  }
  return 0;
}

int cmd_bounds(int nodes, int horizon, int aoi_cap) {
  const BoundInputs inputs{nodes, horizon, aoi_cap};
  validate(inputs);
  std::string closed_max = "-";  // undefined while the AoI ramp is incomplete
  try {
    closed_max = csv_number(theorem1_max(inputs));
  } catch (const std::domain_error&) {
  }
  std::cout
      << "theorem1_min,theorem1_max,min_schedule_oracle,max_schedule_oracle\n"
      << csv_number(theorem1_min(inputs)) << ',' << closed_max << ','
      << csv_number(min_schedule_oracle(inputs)) << ','
      << csv_number(max_schedule_oracle(inputs)) << "\n";
  return 0;
}

int cmd_trace(const CommonInputs& in) {
  const Scenario scenario = resolve_scenario(in);
  if (in.policy.empty()) throw ConfigError("--policy is required");

  std::unique_ptr<Policy> policy;
  if (in.policy == "dqn" && !in.weights.empty())
    policy = std::make_unique<DqnPolicy>(load_qnetwork(in.weights));
  else
    policy = make_policy(in.policy, scenario.env, scenario.train_config,
                         derive_seed(in.seed, 0));

  const EpisodeResult episode =
      run_episode(scenario.env, *policy, derive_seed(in.seed, 1));
  if (in.out_dir.empty()) {
    write_trace_csv(std::cout, scenario.env, episode);
  } else {
    const fs::path out = ensure_out_dir(in.out_dir);
    write_trace_csv((out / "trace.csv").string(), scenario.env, episode);
  }
  std::cerr << "total_cost," << csv_number(episode.total_cost) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-information UAV scheduling toolkit"};
  app.require_subcommand(1);

  CommonInputs in;
  bool dump_values = false;
  int bounds_nodes = 1, bounds_horizon = 1, bounds_aoi_cap = 1;

  CLI::App* train_cmd = app.add_subcommand("train", "train a deep Q-network");
  add_env_source(train_cmd, in, true);
  train_cmd->add_option("--train-config", in.trainer_config,
                        "trainer JSON file");
  train_cmd->add_option("--episodes", in.episodes, "training episodes");
  train_cmd->add_option("--out", in.out_dir, "output directory");

  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "evaluate one policy");
  add_env_source(evaluate_cmd, in, true);
  evaluate_cmd->add_option("--policy", in.policy,
                           "distance|random|dp|tabular-q|dqn");
  evaluate_cmd->add_option("--weights", in.weights, "saved network weights");
  evaluate_cmd->add_option("--train-config", in.trainer_config,
                           "trainer JSON file");
  evaluate_cmd->add_option("--episodes", in.episodes, "evaluation episodes");
  evaluate_cmd->add_option("--out", in.out_dir, "output directory");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run a full policy comparison");
  add_env_source(compare_cmd, in, true);
  compare_cmd->add_option("--train-config", in.trainer_config,
                          "trainer JSON file");
  compare_cmd->add_option("--episodes", in.episodes, "evaluation episodes");
  compare_cmd->add_option("--out", in.out_dir, "output directory");

  CLI::App* dp_cmd =
      app.add_subcommand("dp-solve", "exact solve and greedy trace");
  add_env_source(dp_cmd, in, true);
  dp_cmd->add_option("--out", in.out_dir, "output directory");
  dp_cmd->add_flag("--dump-values", dump_values, "write the full value table");

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "analytic cost bounds as CSV");
  bounds_cmd->add_option("--nodes", bounds_nodes, "number of nodes M")
      ->required();
  bounds_cmd->add_option("--horizon", bounds_horizon, "deadline tau")
      ->required();
  bounds_cmd->add_option("--aoi-cap", bounds_aoi_cap, "AoI cap A_max")
      ->required();

  CLI::App* trace_cmd =
      app.add_subcommand("trace", "roll one episode and dump its trace");
  add_env_source(trace_cmd, in, true);
  trace_cmd->add_option("--policy", in.policy,
                        "distance|random|dp|tabular-q|dqn");
  trace_cmd->add_option("--weights", in.weights, "saved network weights");
  trace_cmd->add_option("--out", in.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) return cmd_train(in);
    if (evaluate_cmd->parsed()) return cmd_evaluate(in);
    if (compare_cmd->parsed()) return cmd_compare(in);
    if (dp_cmd->parsed()) return cmd_dp_solve(in, dump_values);
    if (bounds_cmd->parsed())
      return cmd_bounds(bounds_nodes, bounds_horizon, bounds_aoi_cap);
    if (trace_cmd->parsed()) return cmd_trace(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
