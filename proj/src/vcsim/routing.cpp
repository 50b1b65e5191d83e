#include "vcsim/routing.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace vcsim {

TravelTimeTable::TravelTimeTable(const RoadNetwork& net, int capacity)
    : capacity_(capacity) {
    if (capacity < 1) {
        throw std::invalid_argument("travel-time table capacity must be >= 1");
    }
    for (const Link& l : net.links) {
        links_[l.id].free_flow = l.free_flow_time();
    }
}

const TravelTimeTable::Entry& TravelTimeTable::entry(int link) const {
    auto it = links_.find(link);
    if (it == links_.end()) {
        throw std::out_of_range("travel-time table: unknown link " +
                                std::to_string(link));
    }
    return it->second;
}

void TravelTimeTable::record(int link, double t, double value) {
    auto it = links_.find(link);
    if (it == links_.end()) {
        throw std::out_of_range("travel-time table: unknown link " +
                                std::to_string(link));
    }
    it->second.ring.emplace_back(t, value);
    while (it->second.ring.size() > static_cast<size_t>(capacity_)) {
        it->second.ring.pop_front();
    }
}

double TravelTimeTable::last_value(int link) const {
    const Entry& e = entry(link);
    return e.ring.empty() ? e.free_flow : e.ring.back().second;
}

double TravelTimeTable::free_flow_value(int link) const {
    return entry(link).free_flow;
}

std::vector<double> TravelTimeTable::samples(int link) const {
    const Entry& e = entry(link);
    std::vector<double> out;
    out.reserve(e.ring.size());
    for (const auto& [t, value] : e.ring) {
        (void)t;
        out.push_back(value);
    }
    return out;
}

std::map<int, double> TravelTimeTable::snapshot() const {
    std::map<int, double> out;
    for (const auto& [id, e] : links_) {
        out[id] = e.ring.empty() ? e.free_flow : e.ring.back().second;
    }
    return out;
}

namespace {

struct Label {
    double cost = 0.0;
    int hops = 0;
    std::vector<int> nodes;
    std::vector<int> links;

    // Total order used both in the frontier and for label dominance.
    bool operator<(const Label& other) const {
        if (cost != other.cost) {
            return cost < other.cost;
        }
        if (hops != other.hops) {
            return hops < other.hops;
        }
        return nodes < other.nodes;
    }
};

}  // namespace

Route shortest_route(const RoadNetwork& net,
                     const std::map<int, double>& link_times, int from,
                     int to) {
    if (!net.has_node(from) || !net.has_node(to)) {
        throw std::invalid_argument("shortest_route: unknown endpoint node");
    }
    auto cmp = [](const std::pair<Label, int>& a,
                  const std::pair<Label, int>& b) { return b.first < a.first; };
    std::priority_queue<std::pair<Label, int>,
                        std::vector<std::pair<Label, int>>, decltype(cmp)>
        frontier(cmp);
    std::map<int, Label> settled;

    Label start;
    start.nodes = {from};
    frontier.emplace(start, from);
    while (!frontier.empty()) {
        auto [label, node] = frontier.top();
        frontier.pop();
        if (settled.count(node)) {
            continue;
        }
        settled.emplace(node, label);
        if (node == to) {
            return Route{label.links, label.nodes, label.cost};
        }
        for (const Link* l : net.out_links(node)) {
            if (settled.count(l->to)) {
                continue;
            }
            auto it = link_times.find(l->id);
            const double time =
                it != link_times.end() ? it->second : l->free_flow_time();
            Label next = label;
            next.cost += time;
            next.hops += 1;
            next.nodes.push_back(l->to);
            next.links.push_back(l->id);
            frontier.emplace(std::move(next), l->to);
        }
    }
    throw std::invalid_argument("shortest_route: node " + std::to_string(to) +
                                " unreachable from " + std::to_string(from));
}

}  // namespace vcsim
