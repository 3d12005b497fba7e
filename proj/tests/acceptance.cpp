// Acceptance gate: ten checks, one [PASS]/[FAIL] line each, exit code is the
// number of failures. Optional argv[1] is the CLI binary; when present the
// determinism check runs the real `compare` subcommand twice.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aoisim/bounds.hpp"
#include "aoisim/dp.hpp"
#include "aoisim/env.hpp"
#include "aoisim/harness.hpp"
#include "aoisim/qlearn.hpp"
#include "aoisim/qnet.hpp"
#include "aoisim/rng.hpp"
#include "aoisim/scenarios.hpp"
#include "aoisim/trainer.hpp"
#include "aoisim/types.hpp"
#include "support/net_oracles.hpp"
#include "support/oracles.hpp"

namespace {

using namespace aoisim;
using namespace aoisim::testing;
namespace fs = std::filesystem;

struct Outcome {
  bool ok = false;
  std::string detail;  // appended to the line either way
  std::vector<std::string> notes;
};

EnvSpec tiny_env(int nx, int ny, Cell start, Cell fin, int horizon,
                 std::vector<NodeConfig> nodes) {
  EnvSpec spec;
  spec.grid = GridSpec{nx, ny, 100.0, 100.0, {0.0, 0.0}};
  spec.radio.ref_gain = calibrated_ref_gain(spec.radio);
  spec.nodes = std::move(nodes);
  spec.horizon = horizon;
  spec.start_cell = start;
  spec.final_cell = fin;
  apply_initial_defaults(spec);
  validate(spec);
  return spec;
}

// Randomized micro instances shared by the enumeration and invariant checks:
// grid up to 3x3, up to two nodes, batteries up to 6 quanta, age caps up to 6,
// horizons up to 6 slots.
std::vector<EnvSpec> random_micros(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<EnvSpec> out;
  while (static_cast<int>(out.size()) < count) {
    EnvSpec spec;
    spec.grid = GridSpec{2 + static_cast<int>(uniform_index(rng, 2)),
                         1 + static_cast<int>(uniform_index(rng, 3)), 100.0,
                         100.0, {0.0, 0.0}};
    spec.radio.ref_gain = calibrated_ref_gain(spec.radio);
    const int nodes = 1 + static_cast<int>(uniform_index(rng, 2));
    for (int m = 0; m < nodes; ++m) {
      const Cell c{static_cast<int>(uniform_index(rng, spec.grid.num_cells_x)),
                   static_cast<int>(uniform_index(rng, spec.grid.num_cells_y))};
      spec.nodes.push_back(milli_node(
          c, 1 + static_cast<int>(uniform_index(rng, 6)),
          2 + static_cast<int>(uniform_index(rng, 5)), 1.0 / nodes));
    }
    spec.start_cell = {0, 0};
    spec.final_cell = {spec.grid.num_cells_x - 1, spec.grid.num_cells_y - 1};
    spec.horizon = manhattan_cells(spec.start_cell, spec.final_cell) +
                   static_cast<int>(uniform_index(rng, 3));
    if (spec.horizon < 1 || spec.horizon > 6) continue;
    apply_initial_defaults(spec);
    validate(spec);
    out.push_back(std::move(spec));
  }
  // One hand-picked layout with a node that can never transmit.
  EnvSpec dead = tiny_env(3, 2, {0, 0}, {2, 1}, 5,
                          {NodeConfig{{1, 0}, 1e-3, 0, 4, 0.5},
                           milli_node({1, 1}, 3, 4, 0.5)});
  out.push_back(std::move(dead));
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

Outcome energy_quanta_check() {
  const GridSpec grid{11, 11, 100.0, 100.0, {0.0, 0.0}};
  RadioParams radio;
  radio.ref_gain = calibrated_ref_gain(radio);
  const NodeConfig node = milli_node({5, 5}, 30);
  const std::int64_t five_cells =
      required_quanta(radio, node, channel_gain(radio, grid, {0, 5}, {5, 5}));
  const std::int64_t two_cells =
      required_quanta(radio, node, channel_gain(radio, grid, {3, 5}, {5, 5}));
  Outcome o;
  o.ok = five_cells == 26 && two_cells == 5;
  o.detail = "500 m -> " + std::to_string(five_cells) + " quanta, 200 m -> " +
             std::to_string(two_cells) + " quanta";
  return o;
}

Outcome max_bound_check() {
  long long pairs = 0;
  for (int a_max = 1; a_max <= 60; ++a_max) {
    for (int tau = std::max(1, a_max - 1); tau <= 200; ++tau) {
      const BoundInputs in{1, tau, a_max};
      if (theorem1_max(in) != max_schedule_oracle(in)) {
        Outcome o;
        o.detail = "mismatch at A_max=" + std::to_string(a_max) +
                   " tau=" + std::to_string(tau);
        return o;
      }
      ++pairs;
    }
  }
  Outcome o;
  o.ok = true;
  o.detail = std::to_string(pairs) + " (A_max, tau) pairs, zero tolerance";
  return o;
}

Outcome min_bound_check() {
  long long pairs = 0;
  for (int m = 1; m <= 6; ++m) {
    for (int tau = 1; tau <= 50; ++tau) {
      const BoundInputs in{m, tau, 50};
      double sum = 0.0;
      for (int n = 1; n <= tau; ++n) sum += per_slot_min(in, n);
      if (sum != min_schedule_oracle(in)) {
        Outcome o;
        o.detail = "mismatch at M=" + std::to_string(m) +
                   " tau=" + std::to_string(tau);
        return o;
      }
      ++pairs;
    }
  }
  const BoundInputs gap{2, 16, 50};
  const double closed = theorem1_min(gap);
  const double oracle = min_schedule_oracle(gap);
  Outcome o;
  o.ok = closed == 20.5 && oracle == 23.5;
  o.detail = std::to_string(pairs) + " (M, tau) pairs, zero tolerance";
  o.notes.push_back("closed-form minimum " + fmt(closed) +
                    " vs schedule oracle " + fmt(oracle) +
                    " at M=2 tau=16: known gap, the oracle is authoritative");
  return o;
}

Outcome dp_exactness_check() {
  const auto specs = random_micros(20240815, 23);
  int done = 0;
  for (const EnvSpec& spec : specs) {
    const double dp = solve(spec).initial_value();
    const double brute = brute_force_min_cost(spec);
    if (dp != brute) {
      Outcome o;
      o.detail = "instance " + std::to_string(done) + ": dp " + fmt(dp) +
                 " vs enumeration " + fmt(brute);
      return o;
    }
    ++done;
  }
  Outcome o;
  o.ok = done >= 20;
  o.detail = std::to_string(done) + " randomized micros, zero tolerance";
  return o;
}

Outcome tabular_optimality_check() {
  const std::vector<EnvSpec> specs = {
      tiny_env(3, 1, {0, 0}, {2, 0}, 4, {milli_node({1, 0}, 3, 5)}),
      tiny_env(3, 3, {0, 0}, {2, 2}, 5, {milli_node({1, 1}, 2, 4)}),
      tiny_env(3, 2, {0, 0}, {2, 1}, 5,
               {milli_node({1, 0}, 2, 4, 0.5), milli_node({1, 1}, 1, 4, 0.5)}),
      tiny_env(2, 2, {0, 0}, {1, 1}, 4,
               {milli_node({0, 1}, 2, 3, 0.5), milli_node({1, 0}, 2, 3, 0.5)}),
      tiny_env(4, 1, {0, 0}, {3, 0}, 5, {milli_node({2, 0}, 3, 6)}),
  };
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const double exact = solve(specs[i]).initial_value();
    TabularTrainConfig config;
    config.episodes = 5000;
    config.learning_rate = 1.0;
    config.epsilon_end = 0.2;
    config.seed = 100 + i;
    const TabularTrainResult trained = train_tabular(specs[i], config);
    TabularQPolicy greedy(trained.table);
    const EvalResult eval = evaluate_policy(specs[i], greedy, 2, 1);
    if (eval.mean != exact || eval.stddev != 0.0) {
      Outcome o;
      o.detail = "instance " + std::to_string(i) + ": greedy " +
                 fmt(eval.mean) + " vs exact " + fmt(exact);
      return o;
    }
  }
  Outcome o;
  o.ok = true;
  o.detail = "5 micros reach the exact optimum within 5000 episodes";
  return o;
}

Outcome gradient_check() {
  std::mt19937_64 rng(11);
  int checked = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 400 && checked < 10; ++seed) {
    const QNetwork net = make_qnetwork(5, 8, 6, seed);
    std::vector<Experience> batch;
    std::vector<double> targets;
    for (int i = 0; i < 4; ++i) {
      Experience e;
      e.state = Eigen::VectorXd::NullaryExpr(
          5, [&rng](Eigen::Index) { return uniform_real01(rng); });
      e.action_index = static_cast<int>(uniform_index(rng, 6));
      batch.push_back(std::move(e));
      targets.push_back(2.0 * uniform_real01(rng) - 1.0);
    }
    if (!away_from_kinks(net, batch)) continue;
    const FdReport report = fd_check(net, batch, targets);
    if (report.compared <= 20 || report.max_rel_err >= 1e-4) {
      Outcome o;
      o.detail = "point " + std::to_string(checked) + ": max rel err " +
                 fmt(report.max_rel_err) + " over " +
                 std::to_string(report.compared) + " components";
      return o;
    }
    worst = std::max(worst, report.max_rel_err);
    ++checked;
  }
  Outcome o;
  o.ok = checked == 10;
  o.detail = "10 smooth points, worst relative error " + fmt(worst);
  return o;
}

Outcome policy_ordering_check() {
  const MetricReport report = run_comparison(find_scenario("micro2"), 1);
  std::map<std::string, const PolicyMetrics*> by_name;
  for (const PolicyMetrics& row : report.rows) by_name[row.policy] = &row;
  for (const char* need : {"dqn", "distance", "random", "dp"})
    if (!by_name.count(need)) {
      Outcome o;
      o.detail = std::string("missing policy row ") + need;
      return o;
    }
  const double dqn = by_name["dqn"]->mean_total;
  const double dist = by_name["distance"]->mean_total;
  const double rnd = by_name["random"]->mean_total;
  const double dp = by_name["dp"]->mean_total;
  Outcome o;
  o.ok = by_name["dqn"]->episodes == 1000 && dqn <= dist && dqn <= rnd &&
         std::abs(dqn - dp) <= 0.10 * dp;
  o.detail = "dqn " + fmt(dqn) + " <= distance " + fmt(dist) + ", <= random " +
             fmt(rnd) + ", exact " + fmt(dp);
  return o;
}

Outcome convergence_trend_check() {
  const Scenario scenario = find_scenario("micro1");
  const MetricReport report = run_comparison(scenario, 1);
  Outcome o;
  if (report.rows.size() != scenario.sweep_values.size()) {
    o.detail = "expected one row per sweep point";
    return o;
  }
  for (const PolicyMetrics& row : report.rows) {
    std::vector<double> totals;
    for (const EpisodePoint& p : row.learning_curve)
      totals.push_back(p.total_cost);
    if (totals.size() < 500) {
      o.detail = "learning curve shorter than the averaging window";
      return o;
    }
    const std::vector<double> ma = trailing_moving_average(totals, 500);
    if (!(ma.back() < ma[499])) {
      o.detail = "node y=" + row.sweep_value + ": moving average " +
                 fmt(ma[499]) + " -> " + fmt(ma.back()) + " did not fall";
      return o;
    }
  }
  const double near = report.rows.front().mean_total;
  const double far = report.rows.back().mean_total;
  o.ok = near < far;
  o.detail = "averages fall on all sweep points; near node " + fmt(near) +
             " < far node " + fmt(far);
  return o;
}

Outcome invariant_sweep_check() {
  const auto specs = random_micros(77001, 23);
  long long episodes = 0, transitions = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const SweepResult result = exhaustive_invariant_sweep(specs[i]);
    if (!result.ok || result.episodes == 0) {
      Outcome o;
      o.detail = "instance " + std::to_string(i) + ": " + result.detail;
      return o;
    }
    episodes += result.episodes;
    transitions += result.transitions;
  }
  Outcome o;
  o.ok = true;
  o.detail = std::to_string(specs.size()) + " micros, " +
             std::to_string(episodes) + " action sequences, " +
             std::to_string(transitions) + " transitions";
  return o;
}

// Reads every regular file under dir into name -> bytes.
std::map<std::string, std::string> slurp_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    out[entry.path().filename().string()] = buf.str();
  }
  return out;
}

Outcome determinism_check(const std::string& cli) {
  Outcome o;
  if (!cli.empty()) {
    const fs::path base =
        fs::temp_directory_path() /
        ("aoisim_accept_" + std::to_string(::getpid()));
    const fs::path dir_a = base.string() + "_a";
    const fs::path dir_b = base.string() + "_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    for (const fs::path& dir : {dir_a, dir_b}) {
      const std::string cmd = cli + " compare --scenario micro2 --seed 1 --out " +
                              dir.string() + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        o.detail = "compare run failed in " + dir.string();
        return o;
      }
    }
    const auto a = slurp_dir(dir_a);
    const auto b = slurp_dir(dir_b);
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    o.ok = !a.empty() && a == b;
    o.detail = std::to_string(a.size()) + " CSV files byte-identical across " +
               "two compare runs";
    return o;
  }
  // No CLI path given: exercise the same surface in process.
  const Scenario scenario = find_scenario("micro2");
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    const MetricReport report = run_comparison(scenario, 1);
    std::ostringstream buf;
    write_metrics_csv(buf, report);
    write_sweep_means_csv(buf, report);
    for (const PolicyMetrics& row : report.rows)
      if (!row.learning_curve.empty())
        write_convergence_csv(buf, row.learning_curve, 500);
    *out = buf.str();
  }
  o.ok = !first.empty() && first == second;
  o.detail = "in-process comparison output byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"reference energy quanta reproduced exactly", energy_quanta_check},
      {"closed-form maximum equals the no-update oracle", max_bound_check},
      {"per-slot minimum sums equal the greedy-reset oracle", min_bound_check},
      {"backward induction equals exhaustive enumeration", dp_exactness_check},
      {"tabular Q-learning reaches the exact optimum", tabular_optimality_check},
      {"semi-gradient matches central finite differences", gradient_check},
      {"trained network beats baselines, within 10% of exact",
       policy_ordering_check},
      {"training average falls, nearer nodes cost less", convergence_trend_check},
      {"environment invariants hold on every action sequence",
       invariant_sweep_check},
      {"fixed-seed comparison output is byte-identical",
       [&cli] { return determinism_check(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = checks[i].second();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %2zu. %s: %s (%.2f s)\n", outcome.ok ? "PASS" : "FAIL",
                i + 1, checks[i].first.c_str(), outcome.detail.c_str(), secs);
    for (const std::string& note : outcome.notes)
      std::printf("         note: %s\n", note.c_str());
    if (!outcome.ok) ++failures;
  }
  std::printf("%d of %zu checks failed\n", failures, checks.size());
  return failures;
}
