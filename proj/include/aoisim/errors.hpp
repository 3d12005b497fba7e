#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aoisim {

// Invalid or inconsistent EnvSpec / TrainerConfig / config file contents.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An action outside feasible_actions() was passed to step(). Caller bug.
struct InfeasibleActionError : std::logic_error {
  using std::logic_error::logic_error;
};

// A transmission would need more energy quanta than the configured
// maximum representable count.
struct UnreachableTransmissionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The state lattice exceeds the enumeration cap. Carries the computed size
// (saturated at uint64 max).
struct StateSpaceTooLargeError : std::runtime_error {
  StateSpaceTooLargeError(std::uint64_t size_, std::uint64_t cap_)
      : std::runtime_error("state space too large: " + std::to_string(size_) +
                           " states exceeds cap " + std::to_string(cap_)),
        size(size_),
        cap(cap_) {}
  std::uint64_t size;
  std::uint64_t cap;
};

// A gradient step produced non-finite values; message carries diagnostics.
struct TrainingDivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A policy name not present in the registry was requested.
struct UnknownPolicyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace aoisim
