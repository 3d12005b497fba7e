#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>

namespace aoisim {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent stream seed derived from a master seed. Used so that episode k
// of a run gets the same generator no matter what ran before it.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0x9E3779B97F4A7C15ull * (stream + 1));
  return splitmix64(s);
}

// Unbiased draw from {0, ..., n-1} via rejection; stable for a given engine
// state regardless of platform (std::uniform_int_distribution is not).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  assert(n >= 1);
  const std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = umax - umax % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform_real01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace aoisim
