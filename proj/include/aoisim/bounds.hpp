#pragma once

namespace aoisim {

// Identical ground nodes: equal weights 1/M, shared AoI cap, all AoI start
// at 1. The closed forms below require aoi_cap >= num_nodes.
struct BoundInputs {
  int num_nodes = 1;  // M
  int horizon = 1;    // tau
  int aoi_cap = 1;    // A_max
};

// Throws ConfigError if an invariant (aoi_cap >= num_nodes >= 1,
// horizon >= 1) fails.
void validate(const BoundInputs& in);

// Closed-form minimum total expected cost, evaluated exactly as printed:
// (2M+1)(M-1)/4 - sum_{n=1}^{M-1} n^2/(2M) + (tau-(M+1))(M+1)/2.
// Known to disagree with min_schedule_oracle; both are reported, the oracle
// is authoritative for bracketing.
double theorem1_min(const BoundInputs& in);

// Closed-form maximum total expected cost:
// A(A-1)/2 + (tau-(A-1))A. Throws std::domain_error when horizon < aoi_cap-1
// (the ramp does not complete; use max_schedule_oracle instead).
double theorem1_max(const BoundInputs& in);

// Per-slot cost of the idealized always-update-the-oldest schedule:
// 1/M * [nM - n(n-1)/2] for n < M, (M+1)/2 for n >= M.
double per_slot_min(const BoundInputs& in, int slot);

// Per-slot cost of the never-update schedule: min(n, A_max).
double per_slot_max(const BoundInputs& in, int slot);

// Simulates the greedy schedule that resets the max-AoI node every slot,
// ignoring geometry and energy; cost accrues before each reset.
double min_schedule_oracle(const BoundInputs& in);

// Simulates the no-update schedule: sum_n min(n, A_max).
double max_schedule_oracle(const BoundInputs& in);

}  // namespace aoisim
