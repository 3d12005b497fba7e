#include "aoisim/bounds.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoisim/errors.hpp"

namespace aoisim {

void validate(const BoundInputs& in) {
  if (in.num_nodes < 1) throw ConfigError("BoundInputs: num_nodes must be >= 1");
  if (in.horizon < 1) throw ConfigError("BoundInputs: horizon must be >= 1");
  if (in.aoi_cap < in.num_nodes)
    throw ConfigError("BoundInputs: aoi_cap must be >= num_nodes");
}

double theorem1_min(const BoundInputs& in) {
  validate(in);
  const double m = in.num_nodes;
  const double tau = in.horizon;
  double quad = 0.0;
  for (int n = 1; n <= in.num_nodes - 1; ++n) quad += n * n / (2.0 * m);
  return (2.0 * m + 1.0) * (m - 1.0) / 4.0 - quad +
         (tau - (m + 1.0)) * (m + 1.0) / 2.0;
}

double theorem1_max(const BoundInputs& in) {
  validate(in);
  if (in.horizon < in.aoi_cap - 1)
    throw std::domain_error(
        "theorem1_max: horizon " + std::to_string(in.horizon) +
        " < aoi_cap - 1; the AoI ramp does not complete, use "
        "max_schedule_oracle");
  const double a = in.aoi_cap;
  const double tau = in.horizon;
  return a * (a - 1.0) / 2.0 + (tau - (a - 1.0)) * a;
}

double per_slot_min(const BoundInputs& in, int slot) {
  validate(in);
  const long long n = slot;
  const long long m = in.num_nodes;
  if (n < m)
    return static_cast<double>(n * m - n * (n - 1) / 2) / static_cast<double>(m);
  return (m + 1.0) / 2.0;
}

double per_slot_max(const BoundInputs& in, int slot) {
  validate(in);
  return static_cast<double>(std::min(slot, in.aoi_cap));
}

double min_schedule_oracle(const BoundInputs& in) {
  validate(in);
  const int m = in.num_nodes;
  std::vector<long long> aoi(m, 1);
  double total = 0.0;
  for (int n = 1; n <= in.horizon; ++n) {
    long long sum = 0;
    int oldest = 0;
    for (int i = 0; i < m; ++i) {
      sum += aoi[i];
      if (aoi[i] > aoi[oldest]) oldest = i;  // ties to the lower index
    }
    total += static_cast<double>(sum) / m;
    for (int i = 0; i < m; ++i)
      aoi[i] = (i == oldest) ? 1 : std::min<long long>(aoi[i] + 1, in.aoi_cap);
  }
  return total;
}

double max_schedule_oracle(const BoundInputs& in) {
  validate(in);
  double total = 0.0;
  for (int n = 1; n <= in.horizon; ++n)
    total += std::min(n, in.aoi_cap);
  return total;
}

}  // namespace aoisim
