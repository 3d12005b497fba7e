#include "aoisim/qnet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "aoisim/errors.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

QNetwork make_qnetwork(int input_dim, int hidden_dim, int output_dim,
                       std::uint64_t seed) {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 1)
    throw ConfigError("make_qnetwork: dimensions must be >= 1");
  QNetwork net;
  net.w1.resize(hidden_dim, input_dim);
  net.b1 = Eigen::VectorXd::Zero(hidden_dim);
  net.w2.resize(output_dim, hidden_dim);
  net.b2 = Eigen::VectorXd::Zero(output_dim);

  std::mt19937_64 rng(seed);
  const auto fill = [&rng](Eigen::MatrixXd& w) {
    const double r =
        std::sqrt(6.0 / (static_cast<double>(w.rows()) + w.cols()));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        w(i, j) = r * (2.0 * uniform_real01(rng) - 1.0);
  };
  fill(net.w1);
  fill(net.w2);
  return net;
}

Eigen::VectorXd forward(const QNetwork& net, const Eigen::VectorXd& features) {
  const Eigen::VectorXd hidden =
      ((net.w1 * features + net.b1).array().max(0.0)).matrix();
  return net.w2 * hidden + net.b2;
}

int encoded_dim(const EnvSpec& spec) { return 2 * spec.num_nodes() + 3; }

Eigen::VectorXd encode_state(const EnvSpec& spec, const SystemState& state) {
  Eigen::VectorXd x(encoded_dim(spec));
  Eigen::Index k = 0;
  for (int m = 0; m < spec.num_nodes(); ++m) {
    x[k++] = static_cast<double>(state.nodes[m].energy_quanta) /
             std::max(1, spec.nodes[m].quanta_capacity);
    x[k++] =
        static_cast<double>(state.nodes[m].aoi) / spec.nodes[m].aoi_cap;
  }
  x[k++] = static_cast<double>(state.uav.cell.ix) /
           std::max(1, spec.grid.num_cells_x - 1);
  x[k++] = static_cast<double>(state.uav.cell.iy) /
           std::max(1, spec.grid.num_cells_y - 1);
  x[k++] = static_cast<double>(state.uav.slack) / std::max(1, spec.horizon);
  return x;
}

namespace {

void write_row_major(std::ostream& out, const Eigen::MatrixXd& w) {
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (j) out << ' ';
      out << w(i, j);
    }
    out << '\n';
  }
}

void read_row_major(std::istream& in, Eigen::MatrixXd& w) {
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      if (!(in >> w(i, j)))
        throw ConfigError("load_qnetwork: truncated weight block");
}

}  // namespace

void save_qnetwork(const QNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("save_qnetwork: cannot open " + path);
  out << "aoisim-qnet v1\n";
  out << net.input_dim() << ' ' << net.hidden_dim() << ' ' << net.output_dim()
      << '\n';
  out << std::setprecision(17);
  write_row_major(out, net.w1);
  write_row_major(out, net.b1);
  write_row_major(out, net.w2);
  write_row_major(out, net.b2);
  if (!out) throw ConfigError("save_qnetwork: write failed for " + path);
}

QNetwork load_qnetwork(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("load_qnetwork: cannot open " + path);
  std::string magic;
  std::getline(in, magic);
  if (magic != "aoisim-qnet v1")
    throw ConfigError("load_qnetwork: unknown format '" + magic + "'");
  int input = 0, hidden = 0, output = 0;
  if (!(in >> input >> hidden >> output) || input < 1 || hidden < 1 ||
      output < 1)
    throw ConfigError("load_qnetwork: bad dimension header");
  QNetwork net;
  net.w1.resize(hidden, input);
  net.b1.resize(hidden);
  net.w2.resize(output, hidden);
  net.b2.resize(output);
  Eigen::MatrixXd b1(hidden, 1), b2(output, 1);
  read_row_major(in, net.w1);
  read_row_major(in, b1);
  read_row_major(in, net.w2);
  read_row_major(in, b2);
  net.b1 = b1.col(0);
  net.b2 = b2.col(0);
  double extra;
  if (in >> extra)
    throw ConfigError("load_qnetwork: trailing data in " + path);
  return net;
}

}  // namespace aoisim
