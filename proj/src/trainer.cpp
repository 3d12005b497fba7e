#include "aoisim/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"
#include "aoisim/qlearn.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

void validate(const TrainerConfig& config) {
  if (config.episodes < 1)
    throw ConfigError("TrainerConfig: episodes must be >= 1");
  if (config.batch_size < 1)
    throw ConfigError("TrainerConfig: batch_size must be >= 1");
  if (!(config.epsilon_end >= 0.0 &&
        config.epsilon_end <= config.epsilon_start &&
        config.epsilon_start <= 1.0))
    throw ConfigError(
        "TrainerConfig: need 0 <= epsilon_end <= epsilon_start <= 1");
  if (!(config.epsilon_decay_fraction >= 0.0 &&
        config.epsilon_decay_fraction <= 1.0))
    throw ConfigError(
        "TrainerConfig: epsilon_decay_fraction must be in [0, 1]");
  if (!(config.learning_rate > 0.0))
    throw ConfigError("TrainerConfig: learning_rate must be > 0");
  if (!(config.discount >= 0.0 && config.discount <= 1.0))
    throw ConfigError("TrainerConfig: discount must be in [0, 1]");
  if (config.replay_capacity < 1)
    throw ConfigError("TrainerConfig: replay_capacity must be >= 1");
  if (config.hidden_dim < 1)
    throw ConfigError("TrainerConfig: hidden_dim must be >= 1");
  if (config.grad_steps_per_episode < 1)
    throw ConfigError("TrainerConfig: grad_steps_per_episode must be >= 1");
  if (config.evaluation_interval < 0)
    throw ConfigError("TrainerConfig: evaluation_interval must be >= 0");
}

namespace {

double masked_min(const Eigen::VectorXd& q,
                  const std::vector<std::uint8_t>& mask) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (mask[static_cast<std::size_t>(i)] && q[i] < best) best = q[i];
  return best;
}

}  // namespace

double td_target(const QNetwork& frozen, const Experience& exp,
                 double discount, bool literal_first_slot) {
  if (literal_first_slot) {
    if (exp.slot == 1) return exp.cost;
    const Eigen::VectorXd q = forward(frozen, exp.next_state);
    const double m =
        exp.next_feasible.empty() ? q.minCoeff() : masked_min(q, exp.next_feasible);
    return exp.cost + discount * m;
  }
  if (exp.terminal) return exp.cost;
  const Eigen::VectorXd q = forward(frozen, exp.next_state);
  return exp.cost + discount * masked_min(q, exp.next_feasible);
}

QNetworkGrad batch_semigradient(const QNetwork& net,
                                std::span<const Experience> batch,
                                std::span<const double> targets) {
  QNetworkGrad g{Eigen::MatrixXd::Zero(net.w1.rows(), net.w1.cols()),
                 Eigen::VectorXd::Zero(net.b1.size()),
                 Eigen::MatrixXd::Zero(net.w2.rows(), net.w2.cols()),
                 Eigen::VectorXd::Zero(net.b2.size())};
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Experience& e = batch[i];
    const Eigen::VectorXd pre = net.w1 * e.state + net.b1;
    const Eigen::VectorXd hidden = pre.array().max(0.0).matrix();
    const double q = net.w2.row(e.action_index).dot(hidden) +
                     net.b2[e.action_index];
    const double dq = 2.0 * (q - targets[i]);  // d(target - q)^2 / dq

    g.w2.row(e.action_index) += dq * hidden.transpose();
    g.b2[e.action_index] += dq;
    const Eigen::VectorXd dpre =
        (dq * net.w2.row(e.action_index).transpose().array() *
         (pre.array() > 0.0).cast<double>())
            .matrix();
    g.w1 += dpre * e.state.transpose();
    g.b1 += dpre;
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  g.w1 *= inv;
  g.b1 *= inv;
  g.w2 *= inv;
  g.b2 *= inv;
  return g;
}

void grad_step(QNetwork& net, std::span<const Experience> batch,
               const QNetwork& frozen, double learning_rate, double discount,
               bool literal_first_slot) {
  if (batch.empty())
    throw ConfigError("grad_step: batch must be nonempty");
  std::vector<double> targets(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    targets[i] = td_target(frozen, batch[i], discount, literal_first_slot);

  const QNetworkGrad g = batch_semigradient(net, batch, targets);
  if (!(g.w1.allFinite() && g.b1.allFinite() && g.w2.allFinite() &&
        g.b2.allFinite())) {
    double tmin = targets[0], tmax = targets[0];
    for (double t : targets) {
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
    throw TrainingDivergedError(
        "grad_step: non-finite gradient (batch " +
        std::to_string(batch.size()) + ", targets [" + std::to_string(tmin) +
        ", " + std::to_string(tmax) + "], |w1| " +
        std::to_string(net.w1.norm()) + ", |w2| " +
        std::to_string(net.w2.norm()) + ")");
  }
  net.w1 -= learning_rate * g.w1;
  net.b1 -= learning_rate * g.b1;
  net.w2 -= learning_rate * g.w2;
  net.b2 -= learning_rate * g.b2;
}

Action select_action(const QNetwork& net, const EnvSpec& spec,
                     const SystemState& state,
                     std::span<const Action> feasible, double epsilon,
                     std::mt19937_64& rng) {
  if (uniform_real01(rng) < epsilon)
    return feasible[uniform_index(rng, feasible.size())];
  const Eigen::VectorXd q = forward(net, encode_state(spec, state));
  double best = std::numeric_limits<double>::infinity();
  Action out = feasible.front();
  for (const Action& cand : feasible) {
    const double v = q[action_index(cand, spec.num_nodes())];
    if (v < best) {
      best = v;
      out = cand;
    }
  }
  return out;
}

Action select_action(const QNetwork& net, const EnvSpec& spec,
                     const SystemState& state, double epsilon,
                     std::mt19937_64& rng) {
  const std::vector<Action> feasible = feasible_actions(spec, state);
  return select_action(net, spec, state, feasible, epsilon, rng);
}

TrainResult train(const EnvSpec& spec, const TrainerConfig& config) {
  validate(spec);
  validate(config);
  EnvSpec env = spec;
  apply_initial_defaults(env);

  TrainResult out;
  out.net = make_qnetwork(encoded_dim(env), config.hidden_dim,
                          env.num_actions(), derive_seed(config.seed, 0));
  ReplayMemory memory(config.replay_capacity);
  std::mt19937_64 rollout_rng(derive_seed(config.seed, 1));
  std::mt19937_64 sample_rng(derive_seed(config.seed, 2));
  out.curve.reserve(config.episodes);

  for (int k = 0; k < config.episodes; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const double eps =
        epsilon_at(config.epsilon_start, config.epsilon_end,
                   config.epsilon_decay_fraction, config.episodes, k);
    const QNetwork frozen = out.net;

    double total = 0.0;
    SystemState s = initial_state(env);
    Eigen::VectorXd enc = encode_state(env, s);
    while (!is_terminal(env, s)) {
      const std::vector<Action> feasible = feasible_actions(env, s);
      const Action a =
          select_action(out.net, env, s, feasible, eps, rollout_rng);
      StepResult r = step(env, s, a);
      total += r.cost;

      Experience e;
      e.state = std::move(enc);
      e.action_index = action_index(a, env.num_nodes());
      e.cost = r.cost;
      e.next_state = encode_state(env, r.next);
      e.terminal = is_terminal(env, r.next);
      if (!e.terminal) e.next_feasible = feasible_mask(env, r.next);
      e.slot = s.slot;
      enc = e.next_state;
      memory.push(std::move(e));
      s = std::move(r.next);
    }

    if (!memory.empty()) {
      for (int gs = 0; gs < config.grad_steps_per_episode; ++gs) {
        const std::vector<Experience> batch =
            memory.sample(config.batch_size, sample_rng);
        grad_step(out.net, batch, frozen, config.learning_rate,
                  config.discount, config.literal_first_slot_targets);
      }
    }

    const auto t1 = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.curve.push_back(EpisodePoint{k + 1, total, eps, ms});

    if (config.evaluation_interval > 0 &&
        (k + 1) % config.evaluation_interval == 0) {
      DqnPolicy greedy(out.net);
      const EpisodeResult ep =
          run_episode(env, greedy, derive_seed(config.seed, 1000000 + k));
      out.eval_curve.push_back(EvalPoint{k + 1, ep.total_cost});
    }
  }
  return out;
}

Action DqnPolicy::act(const EnvSpec& spec, const SystemState& state,
                      std::span<const Action> feasible, std::mt19937_64& rng) {
  return select_action(net_, spec, state, feasible, 0.0, rng);
}

}  // namespace aoisim
