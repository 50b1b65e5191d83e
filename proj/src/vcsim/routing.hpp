#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "vcsim/network.hpp"

namespace vcsim {

// Broadcast travel-time table: per link, the most recent samples received
// from vehicles completing that link (ring of the newest `capacity`
// samples). A link with no samples reports its free-flow time.
class TravelTimeTable {
public:
    TravelTimeTable() = default;
    TravelTimeTable(const RoadNetwork& net, int capacity);

    void record(int link, double t, double value);
    double last_value(int link) const;
    double free_flow_value(int link) const;
    std::vector<double> samples(int link) const;  // oldest first
    std::map<int, double> snapshot() const;       // last_value per link

private:
    struct Entry {
        double free_flow = 0.0;
        std::deque<std::pair<double, double>> ring;  // (t, value)
    };
    const Entry& entry(int link) const;

    int capacity_ = 8;
    std::map<int, Entry> links_;
};

struct Route {
    std::vector<int> links;
    std::vector<int> nodes;  // includes both endpoints
    double cost = 0.0;
};

// Minimum-total-travel-time path under the given per-link times. Ties are
// broken by fewer links, then by lexicographically smallest node-id
// sequence, so routing is deterministic. Throws std::invalid_argument when
// the destination is unreachable.
Route shortest_route(const RoadNetwork& net,
                     const std::map<int, double>& link_times, int from,
                     int to);

}  // namespace vcsim
