#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "aoisim/errors.hpp"
#include "aoisim/rng.hpp"

namespace aoisim {

// One stored transition. next_feasible is the canonical-action mask of the
// successor state and is empty exactly when the successor is terminal; slot
// is the 1-based slot of the pre-transition state (kept for the literal
// first-slot target variant).
struct Experience {
  Eigen::VectorXd state;
  int action_index = 0;
  double cost = 0.0;
  Eigen::VectorXd next_state;
  bool terminal = false;
  std::vector<std::uint8_t> next_feasible;
  int slot = 1;
};

// Fixed-capacity ring buffer; once full, the oldest entry is overwritten.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ < 1) throw ConfigError("ReplayMemory: capacity must be >= 1");
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return buffer_.size(); }
  bool empty() const { return buffer_.empty(); }
  const Experience& at(std::size_t i) const { return buffer_[i]; }

  void push(Experience e) {
    if (buffer_.size() < capacity_) {
      buffer_.push_back(std::move(e));
    } else {
      buffer_[write_] = std::move(e);
    }
    write_ = (write_ + 1) % capacity_;
  }

  // Uniform with replacement from current contents.
  std::vector<Experience> sample(std::size_t batch,
                                 std::mt19937_64& rng) const {
    if (buffer_.empty())
      throw ConfigError("ReplayMemory: cannot sample from empty memory");
    std::vector<Experience> out;
    out.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i)
      out.push_back(buffer_[uniform_index(rng, buffer_.size())]);
    return out;
  }

 private:
  std::size_t capacity_;
  std::size_t write_ = 0;
  std::vector<Experience> buffer_;
};

}  // namespace aoisim
