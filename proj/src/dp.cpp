#include "aoisim/dp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aoisim/env.hpp"
#include "aoisim/errors.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

StateIndexer::StateIndexer(const EnvSpec& spec, std::uint64_t state_cap) {
  validate(spec);
  ncx_ = spec.grid.num_cells_x;
  ncy_ = spec.grid.num_cells_y;
  horizon_ = spec.horizon;
  final_ = spec.final_cell;

  unsigned __int128 size = static_cast<unsigned __int128>(horizon_) + 1;
  cells_ = static_cast<std::uint64_t>(ncx_) * ncy_;
  size *= cells_;

  unsigned __int128 nodes_radix = 1;
  for (const NodeConfig& n : spec.nodes) {
    e_radix_.push_back(n.quanta_capacity + 1);
    a_radix_.push_back(n.aoi_cap);
    nodes_radix *= static_cast<unsigned>(n.quanta_capacity + 1);
    nodes_radix *= static_cast<unsigned>(n.aoi_cap);
  }
  size *= nodes_radix;

  const auto max64 = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t total =
      size > max64 ? max64 : static_cast<std::uint64_t>(size);
  if (total > state_cap) throw StateSpaceTooLargeError(total, state_cap);

  nodes_radix_ = static_cast<std::uint64_t>(nodes_radix);
  stage_ = cells_ * nodes_radix_;
  size_ = total;
}

std::uint64_t StateIndexer::encode(const SystemState& state) const {
  std::uint64_t idx = static_cast<std::uint64_t>(state.slot - 1);
  idx = idx * cells_ +
        static_cast<std::uint64_t>(state.uav.cell.iy) * ncx_ +
        state.uav.cell.ix;
  for (std::size_t m = 0; m < e_radix_.size(); ++m) {
    idx = idx * e_radix_[m] + state.nodes[m].energy_quanta;
    idx = idx * a_radix_[m] + (state.nodes[m].aoi - 1);
  }
  return idx;
}

std::uint64_t StateIndexer::encode_checked(const SystemState& state) const {
  if (state.slot < 1 || state.slot > horizon_ + 1)
    throw std::out_of_range("encode: slot off lattice");
  if (state.uav.cell.ix < 0 || state.uav.cell.ix >= ncx_ ||
      state.uav.cell.iy < 0 || state.uav.cell.iy >= ncy_)
    throw std::out_of_range("encode: cell off lattice");
  if (state.nodes.size() != e_radix_.size())
    throw std::out_of_range("encode: node count mismatch");
  for (std::size_t m = 0; m < e_radix_.size(); ++m) {
    if (state.nodes[m].energy_quanta < 0 ||
        state.nodes[m].energy_quanta >= e_radix_[m])
      throw std::out_of_range("encode: energy off lattice");
    if (state.nodes[m].aoi < 1 || state.nodes[m].aoi > a_radix_[m])
      throw std::out_of_range("encode: aoi off lattice");
  }
  return encode(state);
}

SystemState StateIndexer::decode(std::uint64_t index) const {
  assert(index < size_);
  SystemState s;
  s.nodes.resize(e_radix_.size());
  for (std::size_t m = e_radix_.size(); m-- > 0;) {
    s.nodes[m].aoi = static_cast<int>(index % a_radix_[m]) + 1;
    index /= a_radix_[m];
    s.nodes[m].energy_quanta = static_cast<int>(index % e_radix_[m]);
    index /= e_radix_[m];
  }
  const std::uint64_t cell = index % cells_;
  index /= cells_;
  s.uav.cell = {static_cast<int>(cell % ncx_), static_cast<int>(cell / ncx_)};
  s.slot = static_cast<int>(index) + 1;
  s.uav.slack =
      (horizon_ - s.slot + 1) - manhattan_cells(s.uav.cell, final_);
  return s;
}

double DpSolution::value_at(const SystemState& state) const {
  return value[indexer.encode_checked(state)];
}

Action DpSolution::action_at(const SystemState& state) const {
  const std::int32_t a = best_action[indexer.encode_checked(state)];
  if (a < 0)
    throw std::logic_error("action_at: state has no feasible action");
  return action_from_index(a, spec.num_nodes());
}

double DpSolution::initial_value() const {
  return value_at(initial_state(spec));
}

DpSolution solve(const EnvSpec& spec, std::uint64_t state_cap) {
  DpSolution sol{spec, StateIndexer(spec, state_cap), {}, {}};
  apply_initial_defaults(sol.spec);
  const StateIndexer& ix = sol.indexer;
  const int M = spec.num_nodes();
  const int tau = spec.horizon;
  const std::uint64_t cells =
      static_cast<std::uint64_t>(spec.grid.num_cells_x) *
      spec.grid.num_cells_y;
  const int ncx = spec.grid.num_cells_x;

  sol.value.assign(ix.size(), 0.0);
  sol.best_action.assign(ix.size(), -1);

  // Per-cell geometry and per-(cell, node) transmission costs, computed once
  // through the same public functions the environment uses.
  std::vector<int> dist(cells);
  std::vector<std::array<std::uint64_t, 5>> next_cell(cells);
  std::vector<std::vector<std::int64_t>> req(cells);  // -1: not transmittable
  for (std::uint64_t c = 0; c < cells; ++c) {
    const Cell cell{static_cast<int>(c % ncx), static_cast<int>(c / ncx)};
    dist[c] = manhattan_cells(cell, spec.final_cell);
    for (int v = 0; v < 5; ++v) {
      const Cell t = move_cell(spec.grid, cell, static_cast<Move>(v));
      next_cell[c][v] = static_cast<std::uint64_t>(t.iy) * ncx + t.ix;
    }
    req[c].resize(M);
    for (int m = 0; m < M; ++m) {
      SystemState probe;
      probe.nodes.assign(M, NodeState{spec.nodes[m].quanta_capacity, 1});
      probe.uav.cell = cell;
      req[c][m] = -1;
      if (can_schedule(spec, probe, m)) {
        const double g =
            channel_gain(spec.radio, spec.grid, cell, spec.nodes[m].cell);
        req[c][m] = required_quanta(spec.radio, spec.nodes[m], g);
      }
    }
  }

  // Node digit geometry: place value of node m's (energy, aoi) pair.
  std::vector<std::uint64_t> place(M, 1);
  std::vector<int> e_radix(M), a_radix(M);
  for (int m = 0; m < M; ++m) {
    e_radix[m] = spec.nodes[m].quanta_capacity + 1;
    a_radix[m] = spec.nodes[m].aoi_cap;
  }
  for (int m = M - 2; m >= 0; --m)
    place[m] = place[m + 1] * e_radix[m + 1] * a_radix[m + 1];
  const std::uint64_t nodes_radix = place.empty()
                                        ? 1
                                        : place[0] * e_radix[0] * a_radix[0];

  const std::uint64_t final_cidx =
      static_cast<std::uint64_t>(spec.final_cell.iy) * ncx +
      spec.final_cell.ix;

  std::vector<int> e(M), a(M);
  std::vector<std::uint64_t> aged_digit(M), sched_digit(M);

  // Stage tau+1 is all-terminal with value 0, already initialized.
  for (int slot = tau; slot >= 1; --slot) {
    const std::uint64_t stage_base = static_cast<std::uint64_t>(slot - 1) *
                                     ix.stage_size();
    const std::uint64_t next_base =
        static_cast<std::uint64_t>(slot) * ix.stage_size();
    const int remaining_after = tau - slot;

    for (std::uint64_t c = 0; c < cells; ++c) {
      const std::uint64_t cell_base = stage_base + c * nodes_radix;
      if (c == final_cidx) continue;  // terminal: value 0, action -1
      if (dist[c] > remaining_after + 1) {
        // Slack already negative; no action keeps the final cell reachable.
        std::fill_n(sol.value.begin() + cell_base, nodes_radix, kInf);
        continue;
      }

      std::uint64_t feasible_targets[5];
      int feasible_moves[5];
      int num_moves = 0;
      for (int v = 0; v < 5; ++v)
        if (dist[next_cell[c][v]] <= remaining_after) {
          feasible_targets[num_moves] = next_base + next_cell[c][v] * nodes_radix;
          feasible_moves[num_moves] = v;
          ++num_moves;
        }
      assert(num_moves > 0);

      std::fill(e.begin(), e.end(), 0);
      std::fill(a.begin(), a.end(), 0);  // aoi digit: aoi - 1

      for (std::uint64_t nidx = 0; nidx < nodes_radix; ++nidx) {
        double cost = 0.0;
        std::uint64_t aged = 0;
        for (int m = 0; m < M; ++m) {
          cost += spec.nodes[m].weight * (a[m] + 1);
          const int aged_aoi = std::min(a_radix[m] - 1, a[m] + 1);
          aged_digit[m] =
              (static_cast<std::uint64_t>(e[m]) * a_radix[m] + aged_aoi) *
              place[m];
          sched_digit[m] =
              req[c][m] >= 0 && e[m] >= req[c][m] && e[m] >= 1
                  ? (static_cast<std::uint64_t>(e[m] - req[c][m]) *
                     a_radix[m]) *
                        place[m]
                  : std::numeric_limits<std::uint64_t>::max();
          aged += aged_digit[m];
        }

        double best = kInf;
        std::int32_t best_a = -1;
        for (int vi = 0; vi < num_moves; ++vi) {
          const std::uint64_t target = feasible_targets[vi];
          const int base_action = feasible_moves[vi] * (M + 1);
          {
            const double cand = sol.value[target + aged];
            if (cand < best) {
              best = cand;
              best_a = base_action;
            }
          }
          for (int m = 0; m < M; ++m) {
            if (sched_digit[m] == std::numeric_limits<std::uint64_t>::max())
              continue;
            const std::uint64_t nn = aged - aged_digit[m] + sched_digit[m];
            const double cand = sol.value[target + nn];
            if (cand < best) {
              best = cand;
              best_a = base_action + m + 1;
            }
          }
        }

        sol.value[cell_base + nidx] = cost + best;
        sol.best_action[cell_base + nidx] = best_a;

        for (int m = M - 1; m >= 0; --m) {  // odometer over (e, a) digits
          if (++a[m] < a_radix[m]) break;
          a[m] = 0;
          if (++e[m] < e_radix[m]) break;
          e[m] = 0;
        }
      }
    }
  }
  return sol;
}

std::vector<std::uint8_t> reachable_states(const DpSolution& sol) {
  std::vector<std::uint8_t> seen(sol.indexer.size(), 0);
  std::vector<SystemState> frontier{initial_state(sol.spec)};
  seen[sol.indexer.encode(frontier.front())] = 1;
  while (!frontier.empty()) {
    const SystemState s = std::move(frontier.back());
    frontier.pop_back();
    if (is_terminal(sol.spec, s)) continue;
    for (const Action& a : feasible_actions(sol.spec, s)) {
      SystemState next = step(sol.spec, s, a).next;
      const std::uint64_t idx = sol.indexer.encode(next);
      if (!seen[idx]) {
        seen[idx] = 1;
        frontier.push_back(std::move(next));
      }
    }
  }
  return seen;
}

Action DpPolicy::act(const EnvSpec& spec, const SystemState& state,
                     std::span<const Action> feasible, std::mt19937_64&) {
  (void)spec;
  (void)feasible;
  return solution_->action_at(state);
}

EvalResult evaluate_policy(const EnvSpec& spec, Policy& policy, int episodes,
                           std::uint64_t seed) {
  if (episodes < 1)
    throw ConfigError("evaluate_policy: episodes must be >= 1");
  std::vector<double> totals(episodes);
  for (int k = 0; k < episodes; ++k)
    totals[k] = run_episode(spec, policy, derive_seed(seed, k)).total_cost;
  EvalResult r;
  for (double t : totals) r.mean += t;
  r.mean /= episodes;
  double ss = 0.0;
  for (double t : totals) ss += (t - r.mean) * (t - r.mean);
  r.stddev = std::sqrt(ss / episodes);
  return r;
}

}  // namespace aoisim
