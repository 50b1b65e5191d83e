#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcsim/idm.hpp"

namespace vcsim {

struct Link {
    int id = 0;
    int from = 0;
    int to = 0;
    double length = 0.0;           // m
    double free_flow_speed = 0.0;  // m/s
    bool single_lane = true;

    double free_flow_time() const { return length / free_flow_speed; }
};

// Directed road graph with all-way-stop intersections.
struct RoadNetwork {
    std::vector<int> nodes;
    std::vector<Link> links;  // sorted by id after load/validate

    void validate() const;  // throws std::invalid_argument
    bool has_node(int id) const;
    const Link& link(int id) const;  // throws std::out_of_range
    // Outgoing links of a node, ordered by (to-node, link id).
    std::vector<const Link*> out_links(int node) const;
};

// One requested trip. Vehicle ids are assigned by demand order.
struct Trip {
    int origin = 0;
    int destination = 0;
    double depart = 0.0;  // s
    int vehicle_id = 0;
};

struct NetDemand {
    std::vector<Trip> trips;  // sorted by (depart, vehicle_id)
    std::optional<std::uint64_t> seed;  // set when synthesized

    void validate(const RoadNetwork& net) const;
    // Synthesizes `count` uniform trips over the node set with departures in
    // [0, depart_window), deterministically from the seed.
    static NetDemand random(const RoadNetwork& net, int count,
                            double depart_window, std::uint64_t seed);
};

// Plain-text network file: one record per line, '#' starts a comment.
//   node lines:  <id>
//   link lines:  <id> <from> <to> <length_m> <free_flow_speed_mps>
RoadNetwork parse_network(const std::string& text);
RoadNetwork load_network(const std::string& path);

// Plain-text demand file: <origin> <destination> <depart_s> per line.
NetDemand parse_demand(const std::string& text);
NetDemand load_demand(const std::string& path);

// Vehicles a link can hold at the desired-speed spacing s0 + L + v0*T,
// never less than one.
int link_capacity(const Link& link, const IdmParams& idm);

// BPR-style congestible traversal time:
//   free_flow_time * (1 + 0.15 * (count / capacity)^4)
double link_traversal_time(const Link& link, int vehicles_on_link,
                           const IdmParams& idm);

}  // namespace vcsim
