#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "aoisim/types.hpp"

namespace aoisim {

// Single-hidden-layer value approximator: out = W2 * relu(W1 x + b1) + b2.
// Q-values are costs; smaller is better everywhere.
struct QNetwork {
  Eigen::MatrixXd w1;  // hidden x input
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;  // output x hidden
  Eigen::VectorXd b2;

  int input_dim() const { return static_cast<int>(w1.cols()); }
  int hidden_dim() const { return static_cast<int>(w1.rows()); }
  int output_dim() const { return static_cast<int>(w2.rows()); }
};

// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
QNetwork make_qnetwork(int input_dim, int hidden_dim, int output_dim,
                       std::uint64_t seed);

Eigen::VectorXd forward(const QNetwork& net, const Eigen::VectorXd& features);

// Feature layout: per node (energy/capacity, aoi/aoi_cap), then
// (ix/(ncx-1), iy/(ncy-1), slack/horizon). Every component lies in [0, 1]
// for states reachable under feasible play.
int encoded_dim(const EnvSpec& spec);
Eigen::VectorXd encode_state(const EnvSpec& spec, const SystemState& state);

// Versioned text dump: magic line, "input hidden output" dims line, then
// W1, b1, W2, b2 as row-major doubles. Round-trips exactly.
void save_qnetwork(const QNetwork& net, const std::string& path);
QNetwork load_qnetwork(const std::string& path);  // throws ConfigError

}  // namespace aoisim
