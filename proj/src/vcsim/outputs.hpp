#pragma once

#include <string>

#include "vcsim/config.hpp"
#include "vcsim/metrics.hpp"
#include "vcsim/net_sim.hpp"
#include "vcsim/road_engine.hpp"

namespace vcsim {

// All writers throw std::runtime_error naming the path on I/O failure, and
// embed the rendered scenario config so every file is self-describing.

// Long-format trajectory CSV. Header (after '#' provenance lines):
//   time_s,vehicle_id,position_m,speed_mps,accel_mps2,
//   broadcast_position_m,broadcast_speed_mps
// One row per active vehicle per step, fixed 6-decimal formatting.
void write_trajectory_csv(const std::string& path, const TrajectoryLog& log,
                          const ScenarioSpec& spec);

// Wide plot-ready series: one column per vehicle, blank while a vehicle is
// off the road. `value_of` selects position or speed.
void write_distance_series(const std::string& path, const TrajectoryLog& log,
                           int n_vehicles, const ScenarioSpec& spec);
void write_speed_series(const std::string& path, const TrajectoryLog& log,
                        int n_vehicles, const ScenarioSpec& spec);

void write_metrics_json(const std::string& path, const MetricsReport& report,
                        const ScenarioSpec& spec);

void write_comparison_json(const std::string& path,
                           const ComparisonReport& report,
                           const ScenarioSpec& spec);

// Network run outputs: per-vehicle travel times and the link sequence each
// vehicle actually drove.
void write_route_records(const std::string& path, const NetRunResult& result,
                         const ScenarioSpec& spec);

// Writes the full output set for one finished run into `dir`:
// single-road: trajectory.csv, distance_time.csv, speed_time.csv,
// metrics.json; network: routes.csv, metrics.json. Creates `dir` if needed.
void write_run_outputs(const std::string& dir, const ScenarioSpec& spec,
                       const RunResult* road_result,
                       const NetRunResult* net_result,
                       const MetricsReport& metrics);

}  // namespace vcsim
