#pragma once

#include <cstdint>
#include <vector>

#include "aoisim/policy.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

// Dense bijection between the full state lattice
// slots (1..tau+1) x cells x prod_m (energies x ages) and contiguous indices.
// Slot-major: all states of one slot occupy one contiguous stage, so backward
// induction walks the value table stage by stage. The UAV slack is not a
// digit; it is a function of (slot, cell) and is restored on decode.
class StateIndexer {
 public:
  // Throws StateSpaceTooLargeError when the lattice exceeds state_cap.
  explicit StateIndexer(const EnvSpec& spec,
                        std::uint64_t state_cap = kDefaultStateCap);

  std::uint64_t size() const { return size_; }
  std::uint64_t stage_size() const { return stage_; }
  int num_slots() const { return horizon_ + 1; }

  std::uint64_t encode(const SystemState& state) const;
  SystemState decode(std::uint64_t index) const;

  // Checked encode: throws std::out_of_range if any component is off-lattice.
  std::uint64_t encode_checked(const SystemState& state) const;

 private:
  int ncx_ = 1, ncy_ = 1, horizon_ = 1;
  Cell final_;
  std::vector<int> e_radix_;  // quanta_capacity + 1 per node
  std::vector<int> a_radix_;  // aoi_cap per node, aoi digit = aoi - 1
  std::uint64_t cells_ = 1, nodes_radix_ = 1, stage_ = 1, size_ = 1;
};

struct DpSolution {
  EnvSpec spec;
  StateIndexer indexer;
  // Minimal total remaining cost per lattice state; +infinity where the
  // feasible set is empty (slack already negative).
  std::vector<double> value;
  // Canonical action index attaining it; -1 for terminal and dead states.
  std::vector<std::int32_t> best_action;

  double value_at(const SystemState& state) const;
  Action action_at(const SystemState& state) const;  // throws on dead states
  double initial_value() const;
};

// Exact backward induction over the full lattice, slot tau+1 down to 1.
// Ties among minimizing actions go to the smallest canonical action index.
DpSolution solve(const EnvSpec& spec,
                 std::uint64_t state_cap = kDefaultStateCap);

// Marks states reachable from the initial state under feasible actions.
// Pruning is opt-in for callers; solve() always covers the whole lattice.
std::vector<std::uint8_t> reachable_states(const DpSolution& solution);

class DpPolicy final : public Policy {
 public:
  explicit DpPolicy(const DpSolution& solution) : solution_(&solution) {}
  Action act(const EnvSpec& spec, const SystemState& state,
             std::span<const Action> feasible, std::mt19937_64& rng) override;

 private:
  const DpSolution* solution_;
};

struct EvalResult {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

// Monte-Carlo evaluation over seeded episodes; episode k always sees the
// seed derived from (seed, k) so subsets reproduce.
EvalResult evaluate_policy(const EnvSpec& spec, Policy& policy, int episodes,
                           std::uint64_t seed);

}  // namespace aoisim
