#include "aoisim/csv.hpp"

#include <cstdio>
#include <fstream>

#include "aoisim/errors.hpp"

namespace aoisim {
namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file: " + path);
  return out;
}

}  // namespace

std::string csv_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

void write_trace_csv(std::ostream& out, const EnvSpec& spec,
                     const EpisodeResult& episode) {
  out << "slot,uav_ix,uav_iy,movement,schedule,cost";
  for (int m = 1; m <= spec.num_nodes(); ++m) out << ",aoi_" << m;
  for (int m = 1; m <= spec.num_nodes(); ++m) out << ",energy_" << m;
  out << "\n";
  for (const Transition& t : episode.trace) {
    out << t.state.slot << ',' << t.state.uav.cell.ix << ','
        << t.state.uav.cell.iy << ',' << move_to_char(t.action.movement) << ','
        << t.action.schedule << ',' << csv_number(t.cost);
    for (const NodeState& node : t.state.nodes) out << ',' << node.aoi;
    for (const NodeState& node : t.state.nodes) out << ',' << node.energy_quanta;
    out << "\n";
  }
}

void write_trace_csv(const std::string& path, const EnvSpec& spec,
                     const EpisodeResult& episode) {
  auto out = open_or_throw(path);
  write_trace_csv(out, spec, episode);
}

void write_curve_csv(std::ostream& out, std::span<const EpisodePoint> curve,
                     bool include_wall_ms) {
  out << (include_wall_ms ? "episode,total_cost,epsilon,wall_ms"
                          : "episode,total_cost,epsilon")
      << "\n";
  for (const EpisodePoint& p : curve) {
    out << p.episode << ',' << csv_number(p.total_cost) << ','
        << csv_number(p.epsilon);
    if (include_wall_ms) out << ',' << csv_number(p.wall_ms);
    out << "\n";
  }
}

void write_curve_csv(const std::string& path,
                     std::span<const EpisodePoint> curve,
                     bool include_wall_ms) {
  auto out = open_or_throw(path);
  write_curve_csv(out, curve, include_wall_ms);
}

void write_eval_curve_csv(std::ostream& out, std::span<const EvalPoint> curve) {
  out << "episode,mean_cost\n";
  for (const EvalPoint& p : curve)
    out << p.episode << ',' << csv_number(p.mean_cost) << "\n";
}

void write_eval_curve_csv(const std::string& path,
                          std::span<const EvalPoint> curve) {
  auto out = open_or_throw(path);
  write_eval_curve_csv(out, curve);
}

}  // namespace aoisim
