#pragma once

#include <ostream>
#include <span>
#include <string>

#include "aoisim/env.hpp"
#include "aoisim/trainer.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

// Fixed six-decimal rendering used by every CSV emitter, so identical doubles
// always serialize to identical bytes.
std::string csv_number(double value);

// Columns: slot, uav_ix, uav_iy, movement, schedule, cost, then aoi_m and
// energy_m for every node. One row per transition of the episode.
void write_trace_csv(std::ostream& out, const EnvSpec& spec,
                     const EpisodeResult& episode);
void write_trace_csv(const std::string& path, const EnvSpec& spec,
                     const EpisodeResult& episode);

// Columns: episode, total_cost, epsilon and, when requested, wall_ms. The
// wall-clock column is for interactive runs only; deterministic outputs
// (policy comparisons) leave it out.
void write_curve_csv(std::ostream& out, std::span<const EpisodePoint> curve,
                     bool include_wall_ms);
void write_curve_csv(const std::string& path,
                     std::span<const EpisodePoint> curve, bool include_wall_ms);

// Columns: episode, mean_cost. Periodic greedy evaluations during training.
void write_eval_curve_csv(std::ostream& out, std::span<const EvalPoint> curve);
void write_eval_curve_csv(const std::string& path,
                          std::span<const EvalPoint> curve);

}  // namespace aoisim
