#pragma once

#include <string>
#include <vector>

#include "vcsim/road_engine.hpp"

namespace vcsim {

// Travel-time statistics for one run. `partial` is set when some vehicle
// never exited; aggregates then cover the exited vehicles only.
struct MetricsReport {
    std::string label;
    std::vector<double> per_vehicle;  // s, exited vehicles in id order
    double mean_travel_time = 0.0;    // s
    double makespan = 0.0;            // s, last exit minus first entry
    double throughput = 0.0;          // vehicles/hour
    bool partial = false;
    int n_vehicles = 0;

    bool operator==(const MetricsReport&) const = default;
};

// Cross-scenario deltas for the baseline / attack-only / attack+defense
// triad. Attack harm is measured relative to baseline, defense recovery
// relative to the attack-only run.
struct ComparisonReport {
    MetricsReport baseline;
    MetricsReport attack;
    MetricsReport defense;
    double attack_delta_pct = 0.0;
    double defense_recovery_pct = 0.0;
    double residual_delay_s = 0.0;
};

MetricsReport travel_times(const std::vector<ExitRecord>& exits,
                           std::string label = {});

// Throws std::invalid_argument when vehicle counts differ.
ComparisonReport compare(const MetricsReport& baseline,
                         const MetricsReport& attack,
                         const MetricsReport& defense);

}  // namespace vcsim
