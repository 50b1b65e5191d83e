#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vcsim/attacks.hpp"
#include "vcsim/defenses.hpp"
#include "vcsim/network.hpp"
#include "vcsim/routing.hpp"

namespace vcsim {

struct NetworkScenario {
    RoadNetwork net;
    NetDemand demand;
    IdmParams idm;  // only feeds the link capacity used by the BPR curve
    std::optional<LinkSpoofSpec> attack;
    std::optional<OutlierFilterSpec> defense;
    double service_time = 2.0;  // s per vehicle at an all-way stop
    double dt = 0.5;            // s
    double horizon = 7200.0;    // s
    int history_window = 8;     // travel-time samples kept per link
};

struct VehicleOutcome {
    int id = 0;
    int origin = 0;
    int destination = 0;
    double departed_at = 0.0;
    std::optional<double> arrived_at;
    std::vector<int> route_links;  // links in traversal order
};

struct NetRunResult {
    std::vector<VehicleOutcome> outcomes;  // by vehicle id
    bool completed = false;
    int stranded = 0;
    double end_time = 0.0;

    double mean_travel_time() const;
};

// Mesoscopic network simulation: vehicles advance along links at the BPR
// speed for the link's current load, stop at all-way-stop nodes served FIFO,
// and re-route at every intersection exit from the broadcast travel-time
// table (attacked first, then filtered by the defense).
class NetworkSimulation {
public:
    explicit NetworkSimulation(NetworkScenario sc);

    // Injects honest history, e.g. from a previous observation period.
    void seed_samples(int link, std::span<const double> values);

    void step();
    bool done() const;
    double time() const;
    NetRunResult run();

    // The per-link travel times routing decisions consume right now.
    std::map<int, double> routing_view() const;
    const TravelTimeTable& table() const { return table_; }

private:
    enum class Phase { Pending, OnLink, AtNode, Arrived };

    struct NetVehicle {
        Trip trip;
        Phase phase = Phase::Pending;
        int current_link = -1;
        double progress = 0.0;
        double link_entered_at = 0.0;
        int current_node = -1;
        double node_depart_at = 0.0;
        std::vector<int> route_links;
        std::optional<double> arrived_at;
    };

    void depart_onto(NetVehicle& veh, int from_node, double t);

    NetworkScenario sc_;
    TravelTimeTable table_;
    std::vector<NetVehicle> vehicles_;
    std::map<int, double> server_free_at_;  // all-way-stop server per node
    long step_count_ = 0;
    size_t next_departure_ = 0;
};

NetRunResult run_network(const NetworkScenario& sc);

}  // namespace vcsim
