#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "vcsim/vehicle.hpp"

namespace vcsim {

// Half-open-free time window [start, end] during which a transform is live.
struct ActiveWindow {
    double start = 0.0;
    double end = 0.0;

    bool contains(double t) const { return t >= start && t <= end; }
    bool operator==(const ActiveWindow&) const = default;
};

// Broadcast spoofing attack on a single vehicle: its advertised speed is
// replaced by fake_speed and its advertised position shifted by
// position_offset. True kinematics are never touched. Default values give
// the stationary-ghost attack (speed 0, offset -500 m) on vehicle 0.
struct BroadcastSpoofSpec {
    int hacked_vehicle_id = 0;
    double fake_speed = 0.0;        // v_f, m/s
    double position_offset = -500.0;  // x_f, m
    std::optional<ActiveWindow> window;  // nullopt = entire run

    bool active_at(double t) const { return !window || window->contains(t); }
    bool operator==(const BroadcastSpoofSpec&) const = default;
};

// Falsified travel-time attack on the broadcast link table: every target
// link's advertised travel time is replaced by fake_travel_time while the
// window is active.
struct LinkSpoofSpec {
    std::vector<int> target_links;
    double fake_travel_time = 300.0;  // s
    std::optional<ActiveWindow> window;

    bool active_at(double t) const { return !window || window->contains(t); }
    void validate() const;  // throws std::invalid_argument
    bool operator==(const LinkSpoofSpec&) const = default;
};

// Broadcast content (position, speed) for one vehicle at time t. Returns
// the true state untouched unless the vehicle is the hacked one and the
// window is active.
std::pair<double, double> spoof_broadcast(const VehicleState& true_state,
                                          const BroadcastSpoofSpec& spec,
                                          double t);

// Returns the travel-time map with target links overwritten while the
// window is active. Throws std::invalid_argument if a target link is
// missing from the map.
std::map<int, double> spoof_link_times(const std::map<int, double>& true_times,
                                       const LinkSpoofSpec& spec, double t);

}  // namespace vcsim
