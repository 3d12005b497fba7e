#pragma once

#include <random>
#include <span>

#include "aoisim/types.hpp"

namespace aoisim {

// A policy maps the current state to one member of the supplied feasible set.
// The feasible span is always in canonical order and non-empty.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const EnvSpec& spec, const SystemState& state,
                     std::span<const Action> feasible,
                     std::mt19937_64& rng) = 0;
  // Called once at the start of every episode.
  virtual void reset() {}
};

}  // namespace aoisim
