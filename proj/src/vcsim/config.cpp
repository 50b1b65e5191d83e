#include "vcsim/config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace vcsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string json_type_name(const json& value) {
    return value.type_name();
}

void check_keys(const json& obj, const std::string& block,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key '" + item.key() + "' in " + block);
        }
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double read_double(const json& obj, const std::string& block, const char* key,
                   double fallback) {
    const json* value = find(obj, key);
    if (value == nullptr) {
        return fallback;
    }
    if (!value->is_number()) {
        throw ConfigError("key '" + block + "." + key +
                          "': expected a number, got " + json_type_name(*value));
    }
    return value->get<double>();
}

int read_int(const json& obj, const std::string& block, const char* key,
             int fallback) {
    const json* value = find(obj, key);
    if (value == nullptr) {
        return fallback;
    }
    if (!value->is_number_integer()) {
        throw ConfigError("key '" + block + "." + key +
                          "': expected an integer, got " +
                          json_type_name(*value));
    }
    return value->get<int>();
}

std::string read_string(const json& obj, const std::string& block,
                        const char* key, const std::string& fallback) {
    const json* value = find(obj, key);
    if (value == nullptr) {
        return fallback;
    }
    if (!value->is_string()) {
        throw ConfigError("key '" + block + "." + key +
                          "': expected a string, got " +
                          json_type_name(*value));
    }
    return value->get<std::string>();
}

std::optional<ActiveWindow> read_window(const json& obj,
                                        const std::string& block) {
    const json* value = find(obj, "window");
    if (value == nullptr) {
        return std::nullopt;
    }
    if (!value->is_object()) {
        throw ConfigError("key '" + block + ".window': expected an object");
    }
    check_keys(*value, block + ".window", {"start", "end"});
    ActiveWindow window;
    window.start = read_double(*value, block + ".window", "start", 0.0);
    window.end = read_double(*value, block + ".window", "end", 0.0);
    if (window.end < window.start) {
        throw ConfigError("key '" + block + ".window': end precedes start");
    }
    return window;
}

IdmParams parse_idm(const json& obj) {
    check_keys(obj, "idm", {"v0", "T", "a", "b", "s0", "delta", "L"});
    IdmParams p;
    p.desired_speed = read_double(obj, "idm", "v0", p.desired_speed);
    p.safe_headway = read_double(obj, "idm", "T", p.safe_headway);
    p.max_accel = read_double(obj, "idm", "a", p.max_accel);
    p.comfortable_decel = read_double(obj, "idm", "b", p.comfortable_decel);
    p.min_gap = read_double(obj, "idm", "s0", p.min_gap);
    p.accel_exponent = read_double(obj, "idm", "delta", p.accel_exponent);
    p.vehicle_length = read_double(obj, "idm", "L", p.vehicle_length);
    return p;
}

RoadSpec parse_road(const json& obj) {
    check_keys(obj, "road",
               {"road_length", "dt", "entry_interval", "n_vehicles",
                "entry_speed", "max_sim_time"});
    RoadSpec r;
    r.road_length = read_double(obj, "road", "road_length", r.road_length);
    r.dt = read_double(obj, "road", "dt", r.dt);
    r.entry_interval =
        read_double(obj, "road", "entry_interval", r.entry_interval);
    r.n_vehicles = read_int(obj, "road", "n_vehicles", r.n_vehicles);
    r.entry_speed = read_double(obj, "road", "entry_speed", r.entry_speed);
    r.max_sim_time = read_double(obj, "road", "max_sim_time", r.max_sim_time);
    return r;
}

NetworkConfig parse_network_block(const json& obj) {
    check_keys(obj, "network",
               {"net_file", "demand_file", "random_demand_count",
                "random_demand_window", "service_time", "dt", "horizon",
                "history_window"});
    NetworkConfig n;
    n.net_file = read_string(obj, "network", "net_file", n.net_file);
    n.demand_file = read_string(obj, "network", "demand_file", n.demand_file);
    n.random_demand_count =
        read_int(obj, "network", "random_demand_count", n.random_demand_count);
    n.random_demand_window = read_double(obj, "network", "random_demand_window",
                                         n.random_demand_window);
    n.service_time = read_double(obj, "network", "service_time", n.service_time);
    n.dt = read_double(obj, "network", "dt", n.dt);
    n.horizon = read_double(obj, "network", "horizon", n.horizon);
    n.history_window =
        read_int(obj, "network", "history_window", n.history_window);
    return n;
}

BroadcastSpoofSpec parse_broadcast_attack(const json& obj) {
    check_keys(obj, "attack",
               {"type", "hacked_vehicle_id", "v_f", "x_f", "window"});
    BroadcastSpoofSpec a;
    a.hacked_vehicle_id =
        read_int(obj, "attack", "hacked_vehicle_id", a.hacked_vehicle_id);
    a.fake_speed = read_double(obj, "attack", "v_f", a.fake_speed);
    a.position_offset = read_double(obj, "attack", "x_f", a.position_offset);
    a.window = read_window(obj, "attack");
    return a;
}

LinkSpoofSpec parse_link_attack(const json& obj) {
    check_keys(obj, "attack",
               {"type", "target_links", "fake_travel_time", "window"});
    LinkSpoofSpec a;
    const json* targets = find(obj, "target_links");
    if (targets != nullptr) {
        if (!targets->is_array()) {
            throw ConfigError(
                "key 'attack.target_links': expected an array of link ids");
        }
        for (const json& t : *targets) {
            if (!t.is_number_integer()) {
                throw ConfigError(
                    "key 'attack.target_links': expected integer link ids");
            }
            a.target_links.push_back(t.get<int>());
        }
    }
    a.fake_travel_time =
        read_double(obj, "attack", "fake_travel_time", a.fake_travel_time);
    a.window = read_window(obj, "attack");
    return a;
}

ConsensusSpec parse_consensus(const json& obj) {
    check_keys(obj, "defense", {"type", "mode", "proximity_scale"});
    ConsensusSpec d;
    const std::string mode =
        read_string(obj, "defense", "mode", "PairwiseAverage");
    if (mode == "Off") {
        if (find(obj, "proximity_scale") != nullptr) {
            throw ConfigError(
                "key 'defense.proximity_scale': meaningless with mode Off");
        }
        d.mode = ConsensusMode::Off;
    } else if (mode == "PairwiseAverage") {
        d.mode = ConsensusMode::PairwiseAverage;
    } else if (mode == "ProximityWeighted") {
        d.mode = ConsensusMode::ProximityWeighted;
    } else {
        throw ConfigError(
            "key 'defense.mode': expected Off, PairwiseAverage or "
            "ProximityWeighted");
    }
    d.proximity_scale =
        read_double(obj, "defense", "proximity_scale", d.proximity_scale);
    return d;
}

OutlierFilterSpec parse_filter(const json& obj) {
    check_keys(obj, "defense", {"type", "deviation_threshold", "min_samples"});
    OutlierFilterSpec d;
    d.deviation_threshold = read_double(obj, "defense", "deviation_threshold",
                                        d.deviation_threshold);
    d.min_samples = read_int(obj, "defense", "min_samples", d.min_samples);
    return d;
}

std::string attack_type_or_default(const json& obj, ScenarioKind kind) {
    const std::string fallback = kind == ScenarioKind::SingleRoad
                                     ? "broadcast_spoof"
                                     : "link_spoof";
    return read_string(obj, "attack", "type", fallback);
}

std::string defense_type_or_default(const json& obj, ScenarioKind kind) {
    const std::string fallback =
        kind == ScenarioKind::SingleRoad ? "consensus" : "outlier_filter";
    return read_string(obj, "defense", "type", fallback);
}

}  // namespace

void ScenarioSpec::validate() const {
    try {
        idm.validate();
        if (kind == ScenarioKind::SingleRoad) {
            road.validate();
            if (link_attack || filter) {
                throw ConfigError(
                    "single-road scenario cannot carry network attack/defense "
                    "blocks");
            }
            if (broadcast_attack) {
                if (broadcast_attack->hacked_vehicle_id < 0 ||
                    broadcast_attack->hacked_vehicle_id >= road.n_vehicles) {
                    throw ConfigError(
                        "key 'attack.hacked_vehicle_id': no such vehicle in "
                        "the scenario");
                }
            }
            consensus.validate();
        } else {
            if (broadcast_attack || consensus.mode != ConsensusMode::Off) {
                throw ConfigError(
                    "network scenario cannot carry single-road attack/defense "
                    "blocks");
            }
            if (network.net_file.empty()) {
                throw ConfigError("key 'network.net_file': required");
            }
            const bool has_file = !network.demand_file.empty();
            const bool has_random = network.random_demand_count > 0;
            if (has_file == has_random) {
                throw ConfigError(
                    "network scenario needs exactly one of "
                    "'network.demand_file' and 'network.random_demand_count'");
            }
            if (has_file &&
                network.random_demand_window !=
                    NetworkConfig{}.random_demand_window) {
                throw ConfigError(
                    "key 'network.random_demand_window': meaningless with "
                    "'network.demand_file'");
            }
            if (!(network.dt > 0.0)) {
                throw ConfigError("key 'network.dt': must be > 0");
            }
            if (!(network.horizon > 0.0)) {
                throw ConfigError("key 'network.horizon': must be > 0");
            }
            if (network.service_time < 0.0) {
                throw ConfigError("key 'network.service_time': must be >= 0");
            }
            if (network.history_window < 1) {
                throw ConfigError("key 'network.history_window': must be >= 1");
            }
            if (network.random_demand_count > 0 &&
                !(network.random_demand_window > 0.0)) {
                throw ConfigError(
                    "key 'network.random_demand_window': must be > 0");
            }
            if (link_attack) {
                link_attack->validate();
            }
            if (filter) {
                filter->validate();
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

ScenarioSpec parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config syntax error: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    check_keys(root, "config",
               {"scenario", "idm", "road", "network", "attack", "defense",
                "out_dir", "seed"});

    ScenarioSpec spec;
    const std::string kind = read_string(root, "config", "scenario", "single-road");
    if (kind == "single-road") {
        spec.kind = ScenarioKind::SingleRoad;
    } else if (kind == "network") {
        spec.kind = ScenarioKind::Network;
    } else {
        throw ConfigError(
            "key 'scenario': expected 'single-road' or 'network'");
    }

    if (find(root, "road") && find(root, "network")) {
        throw ConfigError(
            "config cannot carry both 'road' and 'network' blocks");
    }
    if (spec.kind == ScenarioKind::SingleRoad && find(root, "network")) {
        throw ConfigError("'network' block in a single-road config");
    }
    if (spec.kind == ScenarioKind::Network && find(root, "road")) {
        throw ConfigError("'road' block in a network config");
    }

    if (const json* idm = find(root, "idm")) {
        if (!idm->is_object()) {
            throw ConfigError("key 'idm': expected an object");
        }
        spec.idm = parse_idm(*idm);
    }
    if (const json* road = find(root, "road")) {
        if (!road->is_object()) {
            throw ConfigError("key 'road': expected an object");
        }
        spec.road = parse_road(*road);
    }
    if (const json* net = find(root, "network")) {
        if (!net->is_object()) {
            throw ConfigError("key 'network': expected an object");
        }
        spec.network = parse_network_block(*net);
    }

    // An absent or empty attack/defense block means none at all; defaults
    // only fill the keys of a block that was actually requested.
    if (const json* attack = find(root, "attack")) {
        if (!attack->is_object()) {
            throw ConfigError("key 'attack': expected an object");
        }
        if (!attack->empty()) {
            const std::string type = attack_type_or_default(*attack, spec.kind);
            if (type == "broadcast_spoof") {
                if (spec.kind != ScenarioKind::SingleRoad) {
                    throw ConfigError(
                        "key 'attack.type': broadcast_spoof requires a "
                        "single-road scenario");
                }
                spec.broadcast_attack = parse_broadcast_attack(*attack);
            } else if (type == "link_spoof") {
                if (spec.kind != ScenarioKind::Network) {
                    throw ConfigError(
                        "key 'attack.type': link_spoof requires a network "
                        "scenario");
                }
                spec.link_attack = parse_link_attack(*attack);
            } else {
                throw ConfigError(
                    "key 'attack.type': expected 'broadcast_spoof' or "
                    "'link_spoof'");
            }
        }
    }
    if (const json* defense = find(root, "defense")) {
        if (!defense->is_object()) {
            throw ConfigError("key 'defense': expected an object");
        }
        if (!defense->empty()) {
            const std::string type =
                defense_type_or_default(*defense, spec.kind);
            if (type == "consensus") {
                if (spec.kind != ScenarioKind::SingleRoad) {
                    throw ConfigError(
                        "key 'defense.type': consensus requires a single-road "
                        "scenario");
                }
                spec.consensus = parse_consensus(*defense);
            } else if (type == "outlier_filter") {
                if (spec.kind != ScenarioKind::Network) {
                    throw ConfigError(
                        "key 'defense.type': outlier_filter requires a "
                        "network scenario");
                }
                spec.filter = parse_filter(*defense);
            } else {
                throw ConfigError(
                    "key 'defense.type': expected 'consensus' or "
                    "'outlier_filter'");
            }
        }
    }

    if (const json* out = find(root, "out_dir")) {
        if (!out->is_string()) {
            throw ConfigError("key 'out_dir': expected a string");
        }
        spec.out_dir = out->get<std::string>();
    }
    if (const json* seed = find(root, "seed")) {
        if (!seed->is_number_unsigned() && !seed->is_number_integer()) {
            throw ConfigError("key 'seed': expected a non-negative integer");
        }
        if (seed->is_number_integer() && seed->get<long long>() < 0) {
            throw ConfigError("key 'seed': expected a non-negative integer");
        }
        spec.seed = seed->get<std::uint64_t>();
    }

    spec.validate();
    return spec;
}

ScenarioSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const ScenarioSpec& spec) {
    ordered_json root;
    root["scenario"] =
        spec.kind == ScenarioKind::SingleRoad ? "single-road" : "network";
    root["idm"] = {{"v0", spec.idm.desired_speed},
                   {"T", spec.idm.safe_headway},
                   {"a", spec.idm.max_accel},
                   {"b", spec.idm.comfortable_decel},
                   {"s0", spec.idm.min_gap},
                   {"delta", spec.idm.accel_exponent},
                   {"L", spec.idm.vehicle_length}};
    if (spec.kind == ScenarioKind::SingleRoad) {
        root["road"] = {{"road_length", spec.road.road_length},
                        {"dt", spec.road.dt},
                        {"entry_interval", spec.road.entry_interval},
                        {"n_vehicles", spec.road.n_vehicles},
                        {"entry_speed", spec.road.entry_speed},
                        {"max_sim_time", spec.road.max_sim_time}};
    } else {
        root["network"] = {
            {"net_file", spec.network.net_file},
            {"service_time", spec.network.service_time},
            {"dt", spec.network.dt},
            {"horizon", spec.network.horizon},
            {"history_window", spec.network.history_window}};
        if (!spec.network.demand_file.empty()) {
            root["network"]["demand_file"] = spec.network.demand_file;
        } else {
            root["network"]["random_demand_count"] =
                spec.network.random_demand_count;
            root["network"]["random_demand_window"] =
                spec.network.random_demand_window;
        }
    }
    if (spec.broadcast_attack) {
        ordered_json attack = {
            {"type", "broadcast_spoof"},
            {"hacked_vehicle_id", spec.broadcast_attack->hacked_vehicle_id},
            {"v_f", spec.broadcast_attack->fake_speed},
            {"x_f", spec.broadcast_attack->position_offset}};
        if (spec.broadcast_attack->window) {
            attack["window"] = {{"start", spec.broadcast_attack->window->start},
                                {"end", spec.broadcast_attack->window->end}};
        }
        root["attack"] = attack;
    }
    if (spec.link_attack) {
        ordered_json attack = {
            {"type", "link_spoof"},
            {"target_links", spec.link_attack->target_links},
            {"fake_travel_time", spec.link_attack->fake_travel_time}};
        if (spec.link_attack->window) {
            attack["window"] = {{"start", spec.link_attack->window->start},
                                {"end", spec.link_attack->window->end}};
        }
        root["attack"] = attack;
    }
    if (spec.consensus.mode != ConsensusMode::Off) {
        root["defense"] = {
            {"type", "consensus"},
            {"mode", spec.consensus.mode == ConsensusMode::PairwiseAverage
                         ? "PairwiseAverage"
                         : "ProximityWeighted"},
            {"proximity_scale", spec.consensus.proximity_scale}};
    }
    if (spec.filter) {
        root["defense"] = {
            {"type", "outlier_filter"},
            {"deviation_threshold", spec.filter->deviation_threshold},
            {"min_samples", spec.filter->min_samples}};
    }
    if (spec.out_dir) {
        root["out_dir"] = *spec.out_dir;
    }
    if (spec.seed) {
        root["seed"] = *spec.seed;
    }
    return root.dump(2) + "\n";
}

ScenarioTriad derive_triad(const ScenarioSpec& full) {
    ScenarioTriad triad;
    triad.defense = full;
    triad.attack = full;
    triad.baseline = full;
    if (full.kind == ScenarioKind::SingleRoad) {
        triad.attack.consensus = ConsensusSpec{};
        triad.baseline.consensus = ConsensusSpec{};
        triad.baseline.broadcast_attack.reset();
    } else {
        triad.attack.filter.reset();
        triad.baseline.filter.reset();
        triad.baseline.link_attack.reset();
    }
    return triad;
}

RoadScenario to_road_scenario(const ScenarioSpec& spec) {
    if (spec.kind != ScenarioKind::SingleRoad) {
        throw ConfigError("scenario is not single-road");
    }
    RoadScenario sc;
    sc.road = spec.road;
    sc.idm = spec.idm;
    sc.attack = spec.broadcast_attack;
    sc.defense = spec.consensus;
    return sc;
}

NetworkScenario to_network_scenario(const ScenarioSpec& spec,
                                    const std::string& base_dir) {
    if (spec.kind != ScenarioKind::Network) {
        throw ConfigError("scenario is not a network scenario");
    }
    auto resolve = [&base_dir](const std::string& path) {
        std::filesystem::path p(path);
        if (p.is_absolute() || base_dir.empty()) {
            return path;
        }
        return (std::filesystem::path(base_dir) / p).string();
    };
    NetworkScenario sc;
    sc.net = load_network(resolve(spec.network.net_file));
    if (!spec.network.demand_file.empty()) {
        sc.demand = load_demand(resolve(spec.network.demand_file));
        sc.demand.seed = spec.seed;
    } else {
        sc.demand = NetDemand::random(sc.net, spec.network.random_demand_count,
                                      spec.network.random_demand_window,
                                      spec.seed.value_or(0));
    }
    sc.idm = spec.idm;
    sc.attack = spec.link_attack;
    sc.defense = spec.filter;
    sc.service_time = spec.network.service_time;
    sc.dt = spec.network.dt;
    sc.horizon = spec.network.horizon;
    sc.history_window = spec.network.history_window;
    return sc;
}

}  // namespace vcsim
