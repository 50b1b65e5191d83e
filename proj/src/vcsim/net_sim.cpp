#include "vcsim/net_sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace vcsim {

namespace {
constexpr double kTimeEps = 1e-9;
}

double NetRunResult::mean_travel_time() const {
    double sum = 0.0;
    int n = 0;
    for (const VehicleOutcome& out : outcomes) {
        if (out.arrived_at) {
            sum += *out.arrived_at - out.departed_at;
            ++n;
        }
    }
    return n > 0 ? sum / n : 0.0;
}

NetworkSimulation::NetworkSimulation(NetworkScenario sc) : sc_(std::move(sc)) {
    sc_.net.validate();
    sc_.demand.validate(sc_.net);
    sc_.idm.validate();
    if (sc_.attack) {
        sc_.attack->validate();
        for (int link : sc_.attack->target_links) {
            sc_.net.link(link);  // throws on unknown target
        }
    }
    if (sc_.defense) {
        sc_.defense->validate();
    }
    if (!(sc_.dt > 0.0) || !(sc_.horizon > 0.0) || !(sc_.service_time >= 0.0)) {
        throw std::invalid_argument(
            "network scenario: dt and horizon must be > 0, service_time >= 0");
    }
    table_ = TravelTimeTable(sc_.net, sc_.history_window);
    // Every requested trip must be routable before anything moves.
    std::map<int, double> free_flow;
    for (const Link& l : sc_.net.links) {
        free_flow[l.id] = l.free_flow_time();
    }
    for (const Trip& trip : sc_.demand.trips) {
        shortest_route(sc_.net, free_flow, trip.origin, trip.destination);
    }
    vehicles_.resize(sc_.demand.trips.size());
    for (size_t i = 0; i < sc_.demand.trips.size(); ++i) {
        vehicles_[i].trip = sc_.demand.trips[i];
    }
}

void NetworkSimulation::seed_samples(int link, std::span<const double> values) {
    for (double v : values) {
        table_.record(link, 0.0, v);
    }
}

std::map<int, double> NetworkSimulation::routing_view() const {
    const double t = time();
    std::map<int, double> view = table_.snapshot();
    const bool attack_on = sc_.attack && sc_.attack->active_at(t);
    if (attack_on) {
        view = spoof_link_times(view, *sc_.attack, t);
    }
    if (!sc_.defense) {
        return view;
    }
    // Filtering path: the consumed value per link is the mean of the sample
    // history that survives outlier rejection. While the attack is live its
    // overwritten table entry shows up as the newest sample on each target
    // link, which is exactly what the filter is there to drop.
    for (auto& [link_id, value] : view) {
        std::vector<double> samples = table_.samples(link_id);
        if (attack_on &&
            std::find(sc_.attack->target_links.begin(),
                      sc_.attack->target_links.end(),
                      link_id) != sc_.attack->target_links.end()) {
            samples.push_back(sc_.attack->fake_travel_time);
        }
        const std::vector<double> accepted = outlier_reject(samples, *sc_.defense);
        if (accepted.empty()) {
            value = table_.free_flow_value(link_id);
        } else {
            double sum = 0.0;
            for (double s : accepted) {
                sum += s;
            }
            value = sum / accepted.size();
        }
    }
    return view;
}

void NetworkSimulation::depart_onto(NetVehicle& veh, int from_node, double t) {
    const Route route =
        shortest_route(sc_.net, routing_view(), from_node, veh.trip.destination);
    const int link_id = route.links.front();
    veh.phase = Phase::OnLink;
    veh.current_link = link_id;
    veh.progress = 0.0;
    veh.link_entered_at = t;
    veh.route_links.push_back(link_id);
}

double NetworkSimulation::time() const { return step_count_ * sc_.dt; }

bool NetworkSimulation::done() const {
    if (time() >= sc_.horizon - kTimeEps) {
        return true;
    }
    for (const NetVehicle& veh : vehicles_) {
        if (veh.phase != Phase::Arrived) {
            return false;
        }
    }
    return true;
}

void NetworkSimulation::step() {
    const double t = time();
    const double t_next = (step_count_ + 1) * sc_.dt;

    // Due departures pick their initial route at the origin node.
    while (next_departure_ < vehicles_.size() &&
           vehicles_[next_departure_].trip.depart <= t + kTimeEps) {
        NetVehicle& veh = vehicles_[next_departure_];
        depart_onto(veh, veh.trip.origin, t);
        ++next_departure_;
    }

    // Loads are snapshotted so every vehicle on a link sees the same speed
    // this step regardless of processing order.
    std::map<int, int> load;
    for (const NetVehicle& veh : vehicles_) {
        if (veh.phase == Phase::OnLink) {
            ++load[veh.current_link];
        }
    }
    for (NetVehicle& veh : vehicles_) {
        if (veh.phase != Phase::OnLink) {
            continue;
        }
        const Link& link = sc_.net.link(veh.current_link);
        const double traversal =
            link_traversal_time(link, load[veh.current_link], sc_.idm);
        veh.progress += link.length / traversal * sc_.dt;
    }

    // Completions join the node queue in (approach link, vehicle) order so
    // simultaneous arrivals are served deterministically.
    std::vector<int> completed;
    for (size_t i = 0; i < vehicles_.size(); ++i) {
        const NetVehicle& veh = vehicles_[i];
        if (veh.phase == Phase::OnLink &&
            veh.progress >=
                sc_.net.link(veh.current_link).length - kTimeEps) {
            completed.push_back(static_cast<int>(i));
        }
    }
    std::sort(completed.begin(), completed.end(), [this](int a, int b) {
        return std::tie(vehicles_[a].current_link, a) <
               std::tie(vehicles_[b].current_link, b);
    });
    for (int idx : completed) {
        NetVehicle& veh = vehicles_[idx];
        const Link& link = sc_.net.link(veh.current_link);
        table_.record(link.id, t_next, t_next - veh.link_entered_at);
        if (link.to == veh.trip.destination) {
            veh.phase = Phase::Arrived;
            veh.arrived_at = t_next;
            continue;
        }
        veh.phase = Phase::AtNode;
        veh.current_node = link.to;
        double& server_free = server_free_at_[link.to];
        veh.node_depart_at = std::max(t_next, server_free) + sc_.service_time;
        server_free = veh.node_depart_at;
    }

    // Vehicles done with stop service re-route from the intersection.
    std::vector<int> departing;
    for (size_t i = 0; i < vehicles_.size(); ++i) {
        if (vehicles_[i].phase == Phase::AtNode &&
            vehicles_[i].node_depart_at <= t_next + kTimeEps) {
            departing.push_back(static_cast<int>(i));
        }
    }
    std::sort(departing.begin(), departing.end(), [this](int a, int b) {
        return std::tie(vehicles_[a].node_depart_at, a) <
               std::tie(vehicles_[b].node_depart_at, b);
    });
    for (int idx : departing) {
        NetVehicle& veh = vehicles_[idx];
        depart_onto(veh, veh.current_node, t_next);
    }

    ++step_count_;
}

NetRunResult NetworkSimulation::run() {
    while (!done()) {
        step();
    }
    NetRunResult result;
    result.end_time = time();
    result.outcomes.reserve(vehicles_.size());
    for (const NetVehicle& veh : vehicles_) {
        VehicleOutcome out;
        out.id = veh.trip.vehicle_id;
        out.origin = veh.trip.origin;
        out.destination = veh.trip.destination;
        out.departed_at = veh.trip.depart;
        out.arrived_at = veh.arrived_at;
        out.route_links = veh.route_links;
        if (!veh.arrived_at) {
            ++result.stranded;
        }
        result.outcomes.push_back(std::move(out));
    }
    std::sort(result.outcomes.begin(), result.outcomes.end(),
              [](const VehicleOutcome& a, const VehicleOutcome& b) {
                  return a.id < b.id;
              });
    result.completed = result.stranded == 0;
    return result;
}

NetRunResult run_network(const NetworkScenario& sc) {
    NetworkSimulation sim(sc);
    return sim.run();
}

}  // namespace vcsim
