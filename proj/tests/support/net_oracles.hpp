#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "aoisim/qnet.hpp"
#include "aoisim/replay.hpp"
#include "aoisim/trainer.hpp"

namespace aoisim::testing {

// Straight-line reimplementation of the forward pass on plain vectors,
// sharing nothing with the Eigen version.
inline std::vector<double> naive_forward(const QNetwork& net,
                                         const std::vector<double>& x) {
  const int in = net.input_dim(), hid = net.hidden_dim(),
            out = net.output_dim();
  std::vector<double> h(hid, 0.0);
  for (int i = 0; i < hid; ++i) {
    double acc = net.b1[i];
    for (int j = 0; j < in; ++j) acc += net.w1(i, j) * x[j];
    h[i] = acc > 0.0 ? acc : 0.0;
  }
  std::vector<double> y(out, 0.0);
  for (int i = 0; i < out; ++i) {
    double acc = net.b2[i];
    for (int j = 0; j < hid; ++j) acc += net.w2(i, j) * h[j];
    y[i] = acc;
  }
  return y;
}

// Mean squared TD loss with fixed targets, the quantity batch_semigradient
// differentiates.
inline double batch_loss(const QNetwork& net,
                         std::span<const Experience> batch,
                         std::span<const double> targets) {
  double loss = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Eigen::VectorXd q = forward(net, batch[i].state);
    const double d = targets[i] - q[batch[i].action_index];
    loss += d * d;
  }
  return loss / static_cast<double>(batch.size());
}

struct FdReport {
  double max_rel_err = 0.0;
  long long compared = 0;
};

// Central finite differences of batch_loss against the analytic gradient.
// Components where both magnitudes fall under tiny are skipped.
inline FdReport fd_check(const QNetwork& net, std::span<const Experience> batch,
                         std::span<const double> targets, double h = 1e-5,
                         double tiny = 1e-8) {
  const QNetworkGrad g = batch_semigradient(net, batch, targets);
  FdReport report;
  const auto probe = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + h;
    const double up = batch_loss(net, batch, targets);
    param = saved - h;
    const double down = batch_loss(net, batch, targets);
    param = saved;
    const double fd = (up - down) / (2.0 * h);
    const double denom = std::max(std::abs(analytic), std::abs(fd));
    if (denom < tiny) return;
    report.max_rel_err =
        std::max(report.max_rel_err, std::abs(analytic - fd) / denom);
    ++report.compared;
  };
  QNetwork& mutable_net = const_cast<QNetwork&>(net);
  for (Eigen::Index i = 0; i < net.w1.rows(); ++i)
    for (Eigen::Index j = 0; j < net.w1.cols(); ++j)
      probe(mutable_net.w1(i, j), g.w1(i, j));
  for (Eigen::Index i = 0; i < net.b1.size(); ++i)
    probe(mutable_net.b1[i], g.b1[i]);
  for (Eigen::Index i = 0; i < net.w2.rows(); ++i)
    for (Eigen::Index j = 0; j < net.w2.cols(); ++j)
      probe(mutable_net.w2(i, j), g.w2(i, j));
  for (Eigen::Index i = 0; i < net.b2.size(); ++i)
    probe(mutable_net.b2[i], g.b2[i]);
  return report;
}

// True when every batch sample's hidden preactivations sit at least margin
// away from the rectifier kink, so finite differences stay on one branch.
inline bool away_from_kinks(const QNetwork& net,
                            std::span<const Experience> batch,
                            double margin = 1e-3) {
  for (const Experience& e : batch) {
    const Eigen::VectorXd pre = net.w1 * e.state + net.b1;
    if (pre.array().abs().minCoeff() < margin) return false;
  }
  return true;
}

}  // namespace aoisim::testing
