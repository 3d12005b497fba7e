#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aoisim/policy.hpp"
#include "aoisim/scenarios.hpp"
#include "aoisim/trainer.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

struct PolicyMetrics {
  std::string policy;
  std::string sweep_value;  // "-" when the scenario has no sweep
  double mean_total = 0.0;
  double mean_per_slot = 0.0;
  double stddev = 0.0;  // population std of episode totals
  int episodes = 0;
  std::vector<EpisodePoint> learning_curve;  // learners only
};

struct MetricReport {
  std::string scenario;
  std::vector<PolicyMetrics> rows;  // sweep-major, policies in declared order
};

// Registry: "distance", "random", "dp", "tabular-q", "dqn".
bool is_learner_policy(const std::string& name);

// A ready-to-evaluate instance. Learners are trained here (seeded), "dp"
// solves the env exactly; either may take a while. Throws UnknownPolicyError
// for unregistered names and ConfigError when a learner lacks train_config.
// A learner's per-episode curve lands in *curve_out when given.
std::unique_ptr<Policy> make_policy(
    const std::string& name, const EnvSpec& env,
    const std::optional<TrainerConfig>& train_config, std::uint64_t seed,
    std::vector<EpisodePoint>* curve_out = nullptr);

// Evaluates every declared policy at every sweep point for eval_episodes
// seeded episodes each. Same (scenario, seed) always returns the same report.
MetricReport run_comparison(const Scenario& scenario, std::uint64_t seed);

// Columns: policy,sweep_value,mean_total,mean_per_slot,std,episodes.
void write_metrics_csv(std::ostream& out, const MetricReport& report);

// Pivot for the sweep figures: sweep_value, then one mean_total column per
// policy, rows in sweep order.
void write_sweep_means_csv(std::ostream& out, const MetricReport& report);

// Trailing moving average: entry i averages the last min(i+1, window) values.
std::vector<double> trailing_moving_average(std::span<const double> values,
                                            int window);

// Columns: episode,total_cost,moving_avg. The convergence-figure data.
void write_convergence_csv(std::ostream& out,
                           std::span<const EpisodePoint> curve, int window);

}  // namespace aoisim
