#include "vcsim/perception.hpp"

#include <algorithm>
#include <limits>

namespace vcsim {

PerceivedLeader perceive_leader(const VehicleState& ego,
                                const VehicleState& leader, bool is_immediate,
                                const DefenseTransform* defense) {
    (void)ego;  // leaders are resolved per ego; ego state itself is not read
    PerceivedLeader out;
    out.leader_id = leader.id;
    if (is_immediate) {
        out.position = leader.x;
        out.speed = leader.v;
        out.via = PerceptionSource::Sensed;
        return out;
    }
    if (defense != nullptr && *defense) {
        if (auto consensus = (*defense)(leader)) {
            out.position = consensus->first;
            out.speed = consensus->second;
            out.via = PerceptionSource::Consensus;
            return out;
        }
    }
    out.position = leader.x_broadcast;
    out.speed = leader.v_broadcast;
    out.via = PerceptionSource::Broadcast;
    return out;
}

double connected_accel(const VehicleState& ego,
                       std::span<const PerceivedLeader> leaders,
                       const IdmParams& p) {
    if (leaders.empty()) {
        return free_road_accel(ego.v, p);
    }
    double worst = std::numeric_limits<double>::infinity();
    for (const PerceivedLeader& lead : leaders) {
        const double gap =
            sanitize_gap(lead.position - ego.x - p.vehicle_length);
        const double dv = ego.v - lead.speed;
        worst = std::min(worst, idm_accel(ego.v, dv, gap, p));
    }
    return worst;
}

}  // namespace vcsim
