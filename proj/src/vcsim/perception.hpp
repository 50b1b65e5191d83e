#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "vcsim/idm.hpp"
#include "vcsim/vehicle.hpp"

namespace vcsim {

// Position/speed pair produced by a validation transform.
using PerceivedPair = std::pair<double, double>;

// Optional broadcast-validation hook. Given a non-adjacent leader, returns
// the consensus estimate of its state, or nullopt to keep the raw broadcast.
using DefenseTransform =
    std::function<std::optional<PerceivedPair>(const VehicleState& leader)>;

// Resolves how an ego vehicle sees one leader. Immediate leaders are sensed
// directly (camera/LiDAR), so their broadcast content is irrelevant.
// Non-adjacent leaders are taken from the broadcast channel, optionally
// replaced by the defense transform's consensus values.
PerceivedLeader perceive_leader(const VehicleState& ego,
                                const VehicleState& leader, bool is_immediate,
                                const DefenseTransform* defense = nullptr);

// Acceleration of a connected vehicle: the minimum car-following response
// over all perceived leaders, with each gap sanitized before use. With no
// leaders this falls back to the free-road response.
double connected_accel(const VehicleState& ego,
                       std::span<const PerceivedLeader> leaders,
                       const IdmParams& p);

}  // namespace vcsim
