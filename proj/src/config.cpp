#include "aoisim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aoisim/errors.hpp"
#include "aoisim/env.hpp"

namespace aoisim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail("cannot write config file: " + path);
  out << text;
  if (!out) fail("write failed: " + path);
}

void reject_unknown(const json& object, const std::string& where,
                    std::initializer_list<const char*> known) {
  for (const auto& item : object.items()) {
    bool found = false;
    for (const char* key : known) found = found || item.key() == key;
    if (!found) fail("unknown key \"" + item.key() + "\" in " + where);
  }
}

const json& require(const json& object, const std::string& where,
                    const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) fail("missing key \"" + std::string(key) + "\" in " + where);
  return *it;
}

double as_number(const json& value, const std::string& where) {
  if (!value.is_number()) fail(where + " must be a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) fail(where + " must be an integer");
  return value.get<int>();
}

Cell as_cell(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    fail(where + " must be a two-element [ix, iy] array");
  return Cell{as_int(value[0], where + "[0]"), as_int(value[1], where + "[1]")};
}

std::vector<int> as_int_array(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where + " must be an array of integers");
  std::vector<int> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(as_int(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

GridSpec parse_grid(const json& section) {
  if (!section.is_object()) fail("grid must be an object");
  reject_unknown(section, "grid",
                 {"num_cells_x", "num_cells_y", "x_spacing", "y_spacing",
                  "origin"});
  GridSpec grid;
  grid.num_cells_x = as_int(require(section, "grid", "num_cells_x"), "grid.num_cells_x");
  grid.num_cells_y = as_int(require(section, "grid", "num_cells_y"), "grid.num_cells_y");
  if (section.contains("x_spacing"))
    grid.x_spacing = as_number(section["x_spacing"], "grid.x_spacing");
  if (section.contains("y_spacing"))
    grid.y_spacing = as_number(section["y_spacing"], "grid.y_spacing");
  if (section.contains("origin")) {
    const json& origin = section["origin"];
    if (!origin.is_array() || origin.size() != 2)
      fail("grid.origin must be a two-element array");
    grid.origin = {as_number(origin[0], "grid.origin[0]"),
                   as_number(origin[1], "grid.origin[1]")};
  }
  return grid;
}

RadioParams parse_radio(const json& section) {
  if (!section.is_object()) fail("radio must be an object");
  reject_unknown(section, "radio",
                 {"bandwidth_hz", "packet_bits", "noise_power_w", "ref_gain",
                  "uav_height_m"});
  RadioParams radio;
  if (section.contains("bandwidth_hz"))
    radio.bandwidth_hz = as_number(section["bandwidth_hz"], "radio.bandwidth_hz");
  if (section.contains("packet_bits"))
    radio.packet_bits = as_number(section["packet_bits"], "radio.packet_bits");
  if (section.contains("noise_power_w"))
    radio.noise_power_w = as_number(section["noise_power_w"], "radio.noise_power_w");
  if (section.contains("uav_height_m"))
    radio.uav_height_m = as_number(section["uav_height_m"], "radio.uav_height_m");
  double ref_gain = 0.0;
  if (section.contains("ref_gain"))
    ref_gain = as_number(section["ref_gain"], "radio.ref_gain");
  radio.ref_gain = ref_gain > 0.0 ? ref_gain : calibrated_ref_gain(radio);
  return radio;
}

NodeConfig parse_node(const json& entry, std::size_t index) {
  const std::string where = "nodes[" + std::to_string(index) + "]";
  if (!entry.is_object()) fail(where + " must be an object");
  reject_unknown(entry, where,
                 {"cell", "quanta_capacity", "battery_capacity_j", "quantum_j",
                  "aoi_cap", "weight"});
  NodeConfig node;
  node.cell = as_cell(require(entry, where, "cell"), where + ".cell");
  node.quanta_capacity =
      as_int(require(entry, where, "quanta_capacity"), where + ".quanta_capacity");
  if (entry.contains("battery_capacity_j") && entry.contains("quantum_j"))
    fail(where + ": give battery_capacity_j or quantum_j, not both");
  if (entry.contains("battery_capacity_j")) {
    node.battery_capacity_j =
        as_number(entry["battery_capacity_j"], where + ".battery_capacity_j");
  } else {
    double quantum = 1e-3;
    if (entry.contains("quantum_j"))
      quantum = as_number(entry["quantum_j"], where + ".quantum_j");
    node.battery_capacity_j = quantum * node.quanta_capacity;
  }
  if (entry.contains("aoi_cap"))
    node.aoi_cap = as_int(entry["aoi_cap"], where + ".aoi_cap");
  node.weight = entry.contains("weight")
                    ? as_number(entry["weight"], where + ".weight")
                    : -1.0;  // placeholder, resolved to 1/M below
  return node;
}

}  // namespace

EnvSpec parse_env_spec(const std::string& json_text) {
  const json root = parse_text(json_text);
  if (!root.is_object()) fail("top level must be an object");
  reject_unknown(root, "top level",
                 {"grid", "radio", "nodes", "horizon", "start_cell",
                  "final_cell", "initial_aoi", "initial_quanta"});

  EnvSpec spec;
  spec.grid = parse_grid(require(root, "top level", "grid"));
  if (root.contains("radio"))
    spec.radio = parse_radio(root["radio"]);
  else
    spec.radio.ref_gain = calibrated_ref_gain(spec.radio);

  const json& nodes = require(root, "top level", "nodes");
  if (!nodes.is_array() || nodes.empty())
    fail("nodes must be a non-empty array");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    spec.nodes.push_back(parse_node(nodes[i], i));
  const double default_weight = 1.0 / static_cast<double>(spec.nodes.size());
  for (NodeConfig& node : spec.nodes)
    if (node.weight < 0.0) node.weight = default_weight;

  spec.horizon = as_int(require(root, "top level", "horizon"), "horizon");
  spec.start_cell = as_cell(require(root, "top level", "start_cell"), "start_cell");
  spec.final_cell = as_cell(require(root, "top level", "final_cell"), "final_cell");
  if (root.contains("initial_aoi"))
    spec.initial_aoi = as_int_array(root["initial_aoi"], "initial_aoi");
  if (root.contains("initial_quanta"))
    spec.initial_quanta = as_int_array(root["initial_quanta"], "initial_quanta");

  validate(spec);
  apply_initial_defaults(spec);
  return spec;
}

EnvSpec load_env_spec(const std::string& path) {
  return parse_env_spec(read_file(path).dump());
}

std::string env_spec_to_json_text(const EnvSpec& spec) {
  json root;
  root["grid"] = {{"num_cells_x", spec.grid.num_cells_x},
                  {"num_cells_y", spec.grid.num_cells_y},
                  {"x_spacing", spec.grid.x_spacing},
                  {"y_spacing", spec.grid.y_spacing},
                  {"origin", {spec.grid.origin[0], spec.grid.origin[1]}}};
  root["radio"] = {{"bandwidth_hz", spec.radio.bandwidth_hz},
                   {"packet_bits", spec.radio.packet_bits},
                   {"noise_power_w", spec.radio.noise_power_w},
                   {"ref_gain", spec.radio.ref_gain},
                   {"uav_height_m", spec.radio.uav_height_m}};
  root["nodes"] = json::array();
  for (const NodeConfig& node : spec.nodes) {
    root["nodes"].push_back({{"cell", {node.cell.ix, node.cell.iy}},
                             {"quanta_capacity", node.quanta_capacity},
                             {"battery_capacity_j", node.battery_capacity_j},
                             {"aoi_cap", node.aoi_cap},
                             {"weight", node.weight}});
  }
  root["horizon"] = spec.horizon;
  root["start_cell"] = {spec.start_cell.ix, spec.start_cell.iy};
  root["final_cell"] = {spec.final_cell.ix, spec.final_cell.iy};
  if (!spec.initial_aoi.empty()) root["initial_aoi"] = spec.initial_aoi;
  if (!spec.initial_quanta.empty()) root["initial_quanta"] = spec.initial_quanta;
  return root.dump(2) + "\n";
}

void save_env_spec(const EnvSpec& spec, const std::string& path) {
  write_file(path, env_spec_to_json_text(spec));
}

TrainerConfig parse_trainer_config(const std::string& json_text) {
  const json root = parse_text(json_text);
  if (!root.is_object()) fail("top level must be an object");
  reject_unknown(root, "trainer config",
                 {"episodes", "batch_size", "epsilon_start", "epsilon_end",
                  "epsilon_decay_fraction", "learning_rate", "discount",
                  "replay_capacity", "seed", "evaluation_interval",
                  "hidden_dim", "grad_steps_per_episode",
                  "literal_first_slot_targets"});
  TrainerConfig config;
  if (root.contains("episodes"))
    config.episodes = as_int(root["episodes"], "episodes");
  if (root.contains("batch_size"))
    config.batch_size = as_int(root["batch_size"], "batch_size");
  if (root.contains("epsilon_start"))
    config.epsilon_start = as_number(root["epsilon_start"], "epsilon_start");
  if (root.contains("epsilon_end"))
    config.epsilon_end = as_number(root["epsilon_end"], "epsilon_end");
  if (root.contains("epsilon_decay_fraction"))
    config.epsilon_decay_fraction =
        as_number(root["epsilon_decay_fraction"], "epsilon_decay_fraction");
  if (root.contains("learning_rate"))
    config.learning_rate = as_number(root["learning_rate"], "learning_rate");
  if (root.contains("discount"))
    config.discount = as_number(root["discount"], "discount");
  if (root.contains("replay_capacity")) {
    const int capacity = as_int(root["replay_capacity"], "replay_capacity");
    if (capacity < 1) fail("replay_capacity must be positive");
    config.replay_capacity = static_cast<std::size_t>(capacity);
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer() || root["seed"].get<double>() < 0)
      fail("seed must be a non-negative integer");
    config.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("evaluation_interval"))
    config.evaluation_interval =
        as_int(root["evaluation_interval"], "evaluation_interval");
  if (root.contains("hidden_dim"))
    config.hidden_dim = as_int(root["hidden_dim"], "hidden_dim");
  if (root.contains("grad_steps_per_episode"))
    config.grad_steps_per_episode =
        as_int(root["grad_steps_per_episode"], "grad_steps_per_episode");
  if (root.contains("literal_first_slot_targets")) {
    if (!root["literal_first_slot_targets"].is_boolean())
      fail("literal_first_slot_targets must be a boolean");
    config.literal_first_slot_targets =
        root["literal_first_slot_targets"].get<bool>();
  }
  validate(config);
  return config;
}

TrainerConfig load_trainer_config(const std::string& path) {
  return parse_trainer_config(read_file(path).dump());
}

std::string trainer_config_to_json_text(const TrainerConfig& config) {
  json root;
  root["episodes"] = config.episodes;
  root["batch_size"] = config.batch_size;
  root["epsilon_start"] = config.epsilon_start;
  root["epsilon_end"] = config.epsilon_end;
  root["epsilon_decay_fraction"] = config.epsilon_decay_fraction;
  root["learning_rate"] = config.learning_rate;
  root["discount"] = config.discount;
  root["replay_capacity"] = static_cast<std::int64_t>(config.replay_capacity);
  root["seed"] = config.seed;
  root["evaluation_interval"] = config.evaluation_interval;
  root["hidden_dim"] = config.hidden_dim;
  root["grad_steps_per_episode"] = config.grad_steps_per_episode;
  root["literal_first_slot_targets"] = config.literal_first_slot_targets;
  return root.dump(2) + "\n";
}

void save_trainer_config(const TrainerConfig& config, const std::string& path) {
  write_file(path, trainer_config_to_json_text(config));
}

}  // namespace aoisim
