#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "aoisim/policy.hpp"
#include "aoisim/qnet.hpp"
#include "aoisim/replay.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

struct TrainerConfig {
  int episodes = 2000;
  int batch_size = 64;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.5;
  double learning_rate = 1e-3;
  double discount = 1.0;  // episodic setting
  std::size_t replay_capacity = 100'000;
  std::uint64_t seed = 1;
  int evaluation_interval = 0;  // 0 disables periodic greedy evaluations
  int hidden_dim = 200;
  int grad_steps_per_episode = 1;
  // Literal reading of the first-slot special case in the update targets;
  // the default treats terminal successors as the bootstrap-free case.
  bool literal_first_slot_targets = false;
};

void validate(const TrainerConfig& config);

struct EpisodePoint {
  int episode = 0;  // 1-based
  double total_cost = 0.0;
  double epsilon = 0.0;
  double wall_ms = 0.0;
};

struct EvalPoint {
  int episode = 0;
  double mean_cost = 0.0;
};

struct TrainResult {
  QNetwork net;
  std::vector<EpisodePoint> curve;
  std::vector<EvalPoint> eval_curve;
};

// Update target for one stored experience, evaluated on the frozen snapshot:
// cost alone when the successor is terminal, otherwise cost + discount times
// the masked minimum of the frozen network's next-state values. The literal
// variant instead drops the bootstrap exactly on first-slot experiences and
// takes an unmasked minimum when no successor mask exists.
double td_target(const QNetwork& frozen, const Experience& exp,
                 double discount = 1.0, bool literal_first_slot = false);

struct QNetworkGrad {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;
};

// Mean semi-gradient of (target - Q(s, a))^2 over the batch, flowing only
// through each sample's taken action; targets are treated as constants.
QNetworkGrad batch_semigradient(const QNetwork& net,
                                std::span<const Experience> batch,
                                std::span<const double> targets);

// One step theta <- theta - learning_rate * mean gradient, with targets from
// td_target on the frozen snapshot. Throws TrainingDivergedError when the
// update would introduce non-finite values.
void grad_step(QNetwork& net, std::span<const Experience> batch,
               const QNetwork& frozen, double learning_rate,
               double discount = 1.0, bool literal_first_slot = false);

// Epsilon-greedy over the feasible set; greedy ties take the smallest
// canonical action index.
Action select_action(const QNetwork& net, const EnvSpec& spec,
                     const SystemState& state,
                     std::span<const Action> feasible, double epsilon,
                     std::mt19937_64& rng);
// Same, computing the feasible set itself.
Action select_action(const QNetwork& net, const EnvSpec& spec,
                     const SystemState& state, double epsilon,
                     std::mt19937_64& rng);

// Per episode: roll out epsilon-greedy, store every transition, then take
// grad steps on batches sampled from replay, targets frozen at the episode
// start. Reproducible to the bit from (spec, config, seed).
TrainResult train(const EnvSpec& spec, const TrainerConfig& config);

class DqnPolicy final : public Policy {
 public:
  explicit DqnPolicy(QNetwork net) : net_(std::move(net)) {}
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override;
  const QNetwork& net() const { return net_; }

 private:
  QNetwork net_;
};

}  // namespace aoisim
