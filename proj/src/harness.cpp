#include "aoisim/harness.hpp"

#include <cmath>
#include <utility>

#include "aoisim/csv.hpp"
#include "aoisim/dp.hpp"
#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"
#include "aoisim/policies.hpp"
#include "aoisim/qlearn.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {
namespace {

// DpPolicy and TabularQPolicy borrow their tables; these wrappers keep the
// table alive alongside the policy.
class SolvedDpPolicy final : public Policy {
 public:
  explicit SolvedDpPolicy(DpSolution solution)
      : solution_(std::move(solution)), inner_(solution_) {}
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override {
    return inner_.act(spec, state, feasible, rng);
  }

 private:
  DpSolution solution_;
  DpPolicy inner_;
};

class TrainedTabularPolicy final : public Policy {
 public:
  explicit TrainedTabularPolicy(QTable table)
      : table_(std::move(table)), inner_(table_) {}
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override {
    return inner_.act(spec, state, feasible, rng);
  }

 private:
  QTable table_;
  TabularQPolicy inner_;
};

std::vector<EpisodePoint> tabular_curve(const TabularTrainResult& result,
                                        const TabularTrainConfig& config) {
  std::vector<EpisodePoint> curve;
  curve.reserve(result.episode_costs.size());
  for (std::size_t i = 0; i < result.episode_costs.size(); ++i) {
    EpisodePoint p;
    p.episode = static_cast<int>(i) + 1;
    p.total_cost = result.episode_costs[i];
    p.epsilon = epsilon_at(config.epsilon_start, config.epsilon_end,
                           config.epsilon_decay_fraction, config.episodes,
                           static_cast<int>(i));
    curve.push_back(p);
  }
  return curve;
}

struct EpisodeStats {
  double mean_total = 0.0;
  double mean_per_slot = 0.0;
  double stddev = 0.0;
};

EpisodeStats evaluate_with_slots(const EnvSpec& env, Policy& policy,
                                 int episodes, std::uint64_t seed) {
  if (episodes < 1) throw ConfigError("eval_episodes must be positive");
  std::vector<double> totals(episodes);
  long long slots = 0;
  for (int k = 0; k < episodes; ++k) {
    const EpisodeResult episode =
        run_episode(env, policy, derive_seed(seed, static_cast<std::uint64_t>(k)));
    totals[k] = episode.total_cost;
    slots += static_cast<long long>(episode.trace.size());
  }
  EpisodeStats stats;
  double sum = 0.0;
  for (double t : totals) sum += t;
  stats.mean_total = sum / episodes;
  stats.mean_per_slot = slots == 0 ? 0.0 : sum / static_cast<double>(slots);
  double sq = 0.0;
  for (double t : totals) sq += (t - stats.mean_total) * (t - stats.mean_total);
  stats.stddev = std::sqrt(sq / episodes);
  return stats;
}

}  // namespace

bool is_learner_policy(const std::string& name) {
  return name == "dqn" || name == "tabular-q";
}

std::unique_ptr<Policy> make_policy(
    const std::string& name, const EnvSpec& env,
    const std::optional<TrainerConfig>& train_config, std::uint64_t seed,
    std::vector<EpisodePoint>* curve_out) {
  if (name == "distance") return std::make_unique<DistancePolicy>();
  if (name == "random") return std::make_unique<RandomWalkPolicy>();
  if (name == "dp") return std::make_unique<SolvedDpPolicy>(solve(env));
  if (name == "dqn") {
    if (!train_config)
      throw ConfigError("policy \"dqn\" needs a train_config");
    TrainerConfig config = *train_config;
    config.seed = seed;
    TrainResult result = train(env, config);
    if (curve_out) *curve_out = std::move(result.curve);
    return std::make_unique<DqnPolicy>(std::move(result.net));
  }
  if (name == "tabular-q") {
    if (!train_config)
      throw ConfigError("policy \"tabular-q\" needs a train_config");
    TabularTrainConfig config;
    config.episodes = train_config->episodes;
    config.epsilon_start = train_config->epsilon_start;
    config.epsilon_end = train_config->epsilon_end;
    config.epsilon_decay_fraction = train_config->epsilon_decay_fraction;
    config.seed = seed;
    TabularTrainResult result = train_tabular(env, config);
    if (curve_out) *curve_out = tabular_curve(result, config);
    return std::make_unique<TrainedTabularPolicy>(std::move(result.table));
  }
  throw UnknownPolicyError("unknown policy \"" + name +
                           "\"; known: distance, random, dp, tabular-q, dqn");
}

MetricReport run_comparison(const Scenario& scenario, std::uint64_t seed) {
  MetricReport report;
  report.scenario = scenario.name;
  const int points = scenario.sweep == SweepKind::None
                         ? 1
                         : static_cast<int>(scenario.sweep_values.size());
  for (int i = 0; i < points; ++i) {
    const EnvSpec env = apply_sweep(scenario, i);
    const std::string label = sweep_label(scenario, i);
    for (std::size_t j = 0; j < scenario.policies.size(); ++j) {
      const std::uint64_t stream = 2ull * (static_cast<std::uint64_t>(i) * 64 + j);
      PolicyMetrics row;
      row.policy = scenario.policies[j];
      row.sweep_value = label;
      std::unique_ptr<Policy> policy =
          make_policy(row.policy, env, scenario.train_config,
                      derive_seed(seed, stream), &row.learning_curve);
      const EpisodeStats stats = evaluate_with_slots(
          env, *policy, scenario.eval_episodes, derive_seed(seed, stream + 1));
      row.mean_total = stats.mean_total;
      row.mean_per_slot = stats.mean_per_slot;
      row.stddev = stats.stddev;
      row.episodes = scenario.eval_episodes;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_metrics_csv(std::ostream& out, const MetricReport& report) {
  out << "policy,sweep_value,mean_total,mean_per_slot,std,episodes\n";
  for (const PolicyMetrics& row : report.rows) {
    out << row.policy << ',' << row.sweep_value << ','
        << csv_number(row.mean_total) << ',' << csv_number(row.mean_per_slot)
        << ',' << csv_number(row.stddev) << ',' << row.episodes << "\n";
  }
}

void write_sweep_means_csv(std::ostream& out, const MetricReport& report) {
  std::vector<std::string> policies;
  std::vector<std::string> labels;
  for (const PolicyMetrics& row : report.rows) {
    bool known_policy = false;
    for (const std::string& p : policies) known_policy |= p == row.policy;
    if (!known_policy) policies.push_back(row.policy);
    bool known_label = false;
    for (const std::string& l : labels) known_label |= l == row.sweep_value;
    if (!known_label) labels.push_back(row.sweep_value);
  }
  out << "sweep_value";
  for (const std::string& p : policies) out << ',' << p;
  out << "\n";
  for (const std::string& label : labels) {
    out << label;
    for (const std::string& p : policies) {
      for (const PolicyMetrics& row : report.rows)
        if (row.policy == p && row.sweep_value == label) {
          out << ',' << csv_number(row.mean_total);
          break;
        }
    }
    out << "\n";
  }
}

std::vector<double> trailing_moving_average(std::span<const double> values,
                                            int window) {
  if (window < 1) throw ConfigError("moving-average window must be positive");
  std::vector<double> out(values.size());
  double running = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    if (i >= static_cast<std::size_t>(window))
      running -= values[i - window];
    const std::size_t count = std::min<std::size_t>(i + 1, window);
    out[i] = running / static_cast<double>(count);
  }
  return out;
}

void write_convergence_csv(std::ostream& out,
                           std::span<const EpisodePoint> curve, int window) {
  std::vector<double> costs;
  costs.reserve(curve.size());
  for (const EpisodePoint& p : curve) costs.push_back(p.total_cost);
  const std::vector<double> averaged = trailing_moving_average(costs, window);
  out << "episode,total_cost,moving_avg\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    out << curve[i].episode << ',' << csv_number(curve[i].total_cost) << ','
        << csv_number(averaged[i]) << "\n";
}

}  // namespace aoisim
