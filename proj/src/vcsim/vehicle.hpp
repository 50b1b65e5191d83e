#pragma once

#include <optional>

namespace vcsim {

// True kinematic state plus the broadcast channel contents for one vehicle.
// Without an attack (and with no consensus transform applied downstream),
// x_broadcast/v_broadcast always equal x/v.
struct VehicleState {
    int id = 0;
    double x = 0.0;      // m from the road entry point
    double v = 0.0;      // m/s, clamped >= 0
    double accel = 0.0;  // m/s^2, last commanded acceleration
    double x_broadcast = 0.0;
    double v_broadcast = 0.0;
    double entered_at = 0.0;  // s
    std::optional<double> exited_at;
};

enum class PerceptionSource {
    Sensed,     // direct measurement of the immediate leader
    Broadcast,  // raw broadcast channel
    Consensus,  // broadcast replaced by a consensus-validated estimate
};

// One leader as seen by an ego vehicle after perception resolution.
struct PerceivedLeader {
    int leader_id = 0;
    double position = 0.0;  // m
    double speed = 0.0;     // m/s
    PerceptionSource via = PerceptionSource::Broadcast;
};

}  // namespace vcsim
