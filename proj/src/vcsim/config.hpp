#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "vcsim/attacks.hpp"
#include "vcsim/defenses.hpp"
#include "vcsim/idm.hpp"
#include "vcsim/net_sim.hpp"
#include "vcsim/road_engine.hpp"

namespace vcsim {

// Raised for malformed or invalid scenario configs. Messages name the
// offending key (and the position, for syntax errors).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { SingleRoad, Network };

// Network-scenario settings as they appear in the config file. Graph and
// demand live in separate plain-text files.
struct NetworkConfig {
    std::string net_file;
    std::string demand_file;     // exclusive with random_demand_count
    int random_demand_count = 0;  // > 0 synthesizes demand from the seed
    double random_demand_window = 600.0;  // s
    double service_time = 2.0;
    double dt = 0.5;
    double horizon = 7200.0;
    int history_window = 8;

    bool operator==(const NetworkConfig&) const = default;
};

// Full experiment description: scenario kind, model parameters, optional
// attack and defense blocks, output location and seed.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::SingleRoad;
    IdmParams idm;
    RoadSpec road;          // single-road only
    NetworkConfig network;  // network only
    std::optional<BroadcastSpoofSpec> broadcast_attack;
    std::optional<LinkSpoofSpec> link_attack;
    ConsensusSpec consensus;                     // single-road defense
    std::optional<OutlierFilterSpec> filter;     // network defense
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;

    void validate() const;  // throws ConfigError
    bool operator==(const ScenarioSpec&) const = default;
};

// Parses and validates a JSON scenario config. Unknown keys are errors;
// missing keys take the defaults above.
ScenarioSpec parse_config(const std::string& text);
ScenarioSpec load_config(const std::string& path);

// Canonical JSON rendering with every resolved value materialized.
// parse_config(render_config(spec)) == spec for any valid spec.
std::string render_config(const ScenarioSpec& spec);

// The comparison triad: baseline (no attack, no defense), attack-only, and
// the full spec. Derived specs differ from `full` only in those blocks.
struct ScenarioTriad {
    ScenarioSpec baseline;
    ScenarioSpec attack;
    ScenarioSpec defense;
};
ScenarioTriad derive_triad(const ScenarioSpec& full);

// Conversions into the engines' scenario structs. Relative net/demand file
// paths are resolved against base_dir (usually the config file's directory).
RoadScenario to_road_scenario(const ScenarioSpec& spec);
NetworkScenario to_network_scenario(const ScenarioSpec& spec,
                                    const std::string& base_dir = {});

}  // namespace vcsim
