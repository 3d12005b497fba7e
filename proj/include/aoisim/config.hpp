#pragma once

#include <string>

#include "aoisim/trainer.hpp"
#include "aoisim/types.hpp"

namespace aoisim {

// JSON schema, all sections nested:
//   grid: num_cells_x, num_cells_y, x_spacing, y_spacing, origin [x, y]
//   radio: bandwidth_hz, packet_bits, noise_power_w, uav_height_m, ref_gain
//          (omitted or <= 0 selects the calibrated default)
//   nodes: [{cell [ix, iy], quanta_capacity, battery_capacity_j | quantum_j,
//            aoi_cap, weight}]  (weight defaults to 1/M, quantum to 1 mJ)
//   horizon, start_cell [ix, iy], final_cell [ix, iy]
//   initial_aoi, initial_quanta: optional per-node arrays
// Unknown keys are rejected. The result is validated and defaults are filled.
EnvSpec parse_env_spec(const std::string& json_text);
EnvSpec load_env_spec(const std::string& path);

std::string env_spec_to_json_text(const EnvSpec& spec);
void save_env_spec(const EnvSpec& spec, const std::string& path);

// Flat JSON object; every key optional, falling back to the field default.
TrainerConfig parse_trainer_config(const std::string& json_text);
TrainerConfig load_trainer_config(const std::string& path);

std::string trainer_config_to_json_text(const TrainerConfig& config);
void save_trainer_config(const TrainerConfig& config, const std::string& path);

}  // namespace aoisim
