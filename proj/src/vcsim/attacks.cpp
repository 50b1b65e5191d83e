#include "vcsim/attacks.hpp"

#include <stdexcept>
#include <string>

namespace vcsim {

void LinkSpoofSpec::validate() const {
    if (target_links.empty()) {
        throw std::invalid_argument("link attack: target_links must be non-empty");
    }
    if (!(fake_travel_time > 0.0)) {
        throw std::invalid_argument("link attack: fake_travel_time must be > 0");
    }
}

std::pair<double, double> spoof_broadcast(const VehicleState& true_state,
                                          const BroadcastSpoofSpec& spec,
                                          double t) {
    if (true_state.id == spec.hacked_vehicle_id && spec.active_at(t)) {
        return {true_state.x + spec.position_offset, spec.fake_speed};
    }
    return {true_state.x, true_state.v};
}

std::map<int, double> spoof_link_times(const std::map<int, double>& true_times,
                                       const LinkSpoofSpec& spec, double t) {
    std::map<int, double> out = true_times;
    if (!spec.active_at(t)) {
        return out;
    }
    for (int link : spec.target_links) {
        auto it = out.find(link);
        if (it == out.end()) {
            throw std::invalid_argument("spoof_link_times: unknown link id " +
                                        std::to_string(link));
        }
        it->second = spec.fake_travel_time;
    }
    return out;
}

}  // namespace vcsim
