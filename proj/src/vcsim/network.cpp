#include "vcsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vcsim {

void RoadNetwork::validate() const {
    std::set<int> node_ids;
    for (int n : nodes) {
        if (!node_ids.insert(n).second) {
            throw std::invalid_argument("network: duplicate node id " +
                                        std::to_string(n));
        }
    }
    std::set<int> link_ids;
    for (const Link& l : links) {
        if (!link_ids.insert(l.id).second) {
            throw std::invalid_argument("network: duplicate link id " +
                                        std::to_string(l.id));
        }
        if (!node_ids.count(l.from) || !node_ids.count(l.to)) {
            throw std::invalid_argument("network: link " +
                                        std::to_string(l.id) +
                                        " references an unknown node");
        }
        if (!(l.length > 0.0)) {
            throw std::invalid_argument("network: link " +
                                        std::to_string(l.id) +
                                        " length must be > 0");
        }
        if (!(l.free_flow_speed > 0.0)) {
            throw std::invalid_argument("network: link " +
                                        std::to_string(l.id) +
                                        " free_flow_speed must be > 0");
        }
    }
}

bool RoadNetwork::has_node(int id) const {
    return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

const Link& RoadNetwork::link(int id) const {
    for (const Link& l : links) {
        if (l.id == id) {
            return l;
        }
    }
    throw std::out_of_range("network: no link with id " + std::to_string(id));
}

std::vector<const Link*> RoadNetwork::out_links(int node) const {
    std::vector<const Link*> out;
    for (const Link& l : links) {
        if (l.from == node) {
            out.push_back(&l);
        }
    }
    std::sort(out.begin(), out.end(), [](const Link* a, const Link* b) {
        return std::tie(a->to, a->id) < std::tie(b->to, b->id);
    });
    return out;
}

void NetDemand::validate(const RoadNetwork& net) const {
    for (const Trip& trip : trips) {
        if (trip.depart < 0.0) {
            throw std::invalid_argument("demand: departure times must be >= 0");
        }
        if (trip.origin == trip.destination) {
            throw std::invalid_argument(
                "demand: origin and destination must differ");
        }
        if (!net.has_node(trip.origin) || !net.has_node(trip.destination)) {
            throw std::invalid_argument("demand: trip references unknown node");
        }
    }
}

namespace {

// splitmix64; hand-rolled so synthesized demand is stable across platforms.
std::uint64_t next_rand(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::string> content_lines(const std::string& text,
                                       std::vector<int>& line_numbers) {
    std::vector<std::string> out;
    std::istringstream stream(text);
    std::string line;
    int number = 0;
    while (std::getline(stream, line)) {
        ++number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        out.push_back(line);
        line_numbers.push_back(number);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

NetDemand NetDemand::random(const RoadNetwork& net, int count,
                            double depart_window, std::uint64_t seed) {
    if (net.nodes.size() < 2) {
        throw std::invalid_argument("random demand needs at least two nodes");
    }
    std::vector<int> nodes = net.nodes;
    std::sort(nodes.begin(), nodes.end());
    NetDemand demand;
    demand.seed = seed;
    std::uint64_t state = seed;
    for (int i = 0; i < count; ++i) {
        Trip trip;
        trip.vehicle_id = i;
        trip.origin = nodes[next_rand(state) % nodes.size()];
        do {
            trip.destination = nodes[next_rand(state) % nodes.size()];
        } while (trip.destination == trip.origin);
        const double u =
            static_cast<double>(next_rand(state) >> 11) * 0x1.0p-53;
        trip.depart = std::floor(u * depart_window);
        demand.trips.push_back(trip);
    }
    std::stable_sort(demand.trips.begin(), demand.trips.end(),
                     [](const Trip& a, const Trip& b) {
                         return std::tie(a.depart, a.vehicle_id) <
                                std::tie(b.depart, b.vehicle_id);
                     });
    return demand;
}

RoadNetwork parse_network(const std::string& text) {
    RoadNetwork net;
    std::vector<int> line_numbers;
    const std::vector<std::string> lines = content_lines(text, line_numbers);
    for (size_t i = 0; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::vector<std::string> tokens;
        std::string tok;
        while (row >> tok) {
            tokens.push_back(tok);
        }
        try {
            if (tokens.size() == 1) {
                net.nodes.push_back(std::stoi(tokens[0]));
            } else if (tokens.size() == 5) {
                Link l;
                l.id = std::stoi(tokens[0]);
                l.from = std::stoi(tokens[1]);
                l.to = std::stoi(tokens[2]);
                l.length = std::stod(tokens[3]);
                l.free_flow_speed = std::stod(tokens[4]);
                net.links.push_back(l);
            } else {
                throw std::invalid_argument("expected 1 or 5 fields");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("network file line " +
                                        std::to_string(line_numbers[i]) +
                                        ": " + e.what());
        }
    }
    std::sort(net.links.begin(), net.links.end(),
              [](const Link& a, const Link& b) { return a.id < b.id; });
    net.validate();
    return net;
}

RoadNetwork load_network(const std::string& path) {
    return parse_network(read_file(path));
}

NetDemand parse_demand(const std::string& text) {
    NetDemand demand;
    std::vector<int> line_numbers;
    const std::vector<std::string> lines = content_lines(text, line_numbers);
    for (size_t i = 0; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        Trip trip;
        trip.vehicle_id = static_cast<int>(i);
        if (!(row >> trip.origin >> trip.destination >> trip.depart)) {
            throw std::invalid_argument(
                "demand file line " + std::to_string(line_numbers[i]) +
                ": expected <origin> <destination> <depart_s>");
        }
        demand.trips.push_back(trip);
    }
    std::stable_sort(demand.trips.begin(), demand.trips.end(),
                     [](const Trip& a, const Trip& b) {
                         return std::tie(a.depart, a.vehicle_id) <
                                std::tie(b.depart, b.vehicle_id);
                     });
    return demand;
}

NetDemand load_demand(const std::string& path) {
    return parse_demand(read_file(path));
}

int link_capacity(const Link& link, const IdmParams& idm) {
    const double spacing =
        idm.min_gap + idm.vehicle_length + idm.desired_speed * idm.safe_headway;
    return std::max(1, static_cast<int>(std::floor(link.length / spacing)));
}

double link_traversal_time(const Link& link, int vehicles_on_link,
                           const IdmParams& idm) {
    if (vehicles_on_link < 0) {
        throw std::invalid_argument("link_traversal_time: negative count");
    }
    const double ratio = static_cast<double>(vehicles_on_link) /
                         link_capacity(link, idm);
    return link.free_flow_time() * (1.0 + 0.15 * std::pow(ratio, 4.0));
}

}  // namespace vcsim
