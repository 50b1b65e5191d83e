#pragma once

namespace vcsim {

// Physical and behavioral constants of the car-following model.
// Defaults are the reference parameter set used by all bundled scenarios.
struct IdmParams {
    double desired_speed = 33.33;    // v0, m/s
    double safe_headway = 1.6;       // T, s
    double max_accel = 1.0;          // a, m/s^2
    double comfortable_decel = 2.0;  // b, m/s^2
    double min_gap = 2.0;            // s0, m
    double accel_exponent = 4.0;     // delta
    double vehicle_length = 5.0;     // L, m

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const IdmParams&) const = default;
};

// Hard braking limit, ~1 g. The raw model output is unbounded as the gap
// shrinks to zero; real brakes are not, and the integrator needs a bound
// to stay stable at dt = 0.1.
inline constexpr double kDecelCap = 10.0;  // m/s^2

// Floor applied to perceived gaps before the car-following division.
// Spoofed broadcasts can place a leader behind the ego vehicle, which
// would otherwise feed a non-positive gap into the model.
inline constexpr double kGapFloor = 0.01;  // m

// Desired minimum gap s* = s0 + v*T + v*dv / (2*sqrt(a*b)).
// dv is the closing speed (ego speed minus leader speed). The result may
// drop below s0 for strongly negative dv; it is used unclamped since the
// acceleration formula squares it.
double desired_gap(double v, double dv, const IdmParams& p);

// Car-following acceleration a*(1 - (v/v0)^delta - (s*/gap)^2), capped
// below at -kDecelCap. Requires gap > 0; callers must sanitize first.
double idm_accel(double v, double dv, double gap, const IdmParams& p);

// Acceleration with no vehicle ahead: a*(1 - (v/v0)^delta).
double free_road_accel(double v, const IdmParams& p);

// max(raw_gap, kGapFloor).
double sanitize_gap(double raw_gap);

}  // namespace vcsim
