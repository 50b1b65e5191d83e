#pragma once

#include <optional>
#include <vector>

#include "vcsim/attacks.hpp"
#include "vcsim/defenses.hpp"
#include "vcsim/idm.hpp"
#include "vcsim/vehicle.hpp"

namespace vcsim {

// Geometry and scheduling of the single-road scenario.
struct RoadSpec {
    double road_length = 5000.0;   // m
    double dt = 0.1;               // s
    double entry_interval = 5.0;   // s
    int n_vehicles = 5;
    double entry_speed = 0.0;      // m/s
    double max_sim_time = 600.0;   // s

    void validate() const;  // throws std::invalid_argument
    bool operator==(const RoadSpec&) const = default;
};

// One logged sample. accel is the command computed from this instant's
// state (0 on a vehicle's exit row, where no further command exists), and
// the broadcast columns are derived from this row's true state through the
// active attack transform.
struct TrajectorySample {
    double t = 0.0;
    int vehicle_id = 0;
    double x = 0.0;
    double v = 0.0;
    double accel = 0.0;
    double x_broadcast = 0.0;
    double v_broadcast = 0.0;
};

using TrajectoryLog = std::vector<TrajectorySample>;

struct ExitRecord {
    int id = 0;
    double entered_at = 0.0;
    std::optional<double> exited_at;
};

struct RunResult {
    TrajectoryLog log;
    std::vector<ExitRecord> exits;  // indexed by vehicle id
    bool completed = false;         // all vehicles exited before max_sim_time
    double end_time = 0.0;
};

struct RoadScenario {
    RoadSpec road;
    IdmParams idm;
    std::optional<BroadcastSpoofSpec> attack;
    ConsensusSpec defense;  // mode Off disables validation entirely
};

struct EntryPlan {
    double entry_time = 0.0;
    double x0 = 0.0;
    double v0 = 0.0;
};

// Scheduled entry for vehicle i: time i * entry_interval at the road start.
// Throws std::out_of_range for i outside [0, n_vehicles).
EntryPlan schedule_entry(int i, const RoadSpec& spec);

// Mutable world advanced by road_step. Vehicles are stored by id; id order
// is front-of-queue order (vehicle 0 enters first and is never overtaken).
struct RoadWorld {
    double t = 0.0;
    long step_count = 0;
    std::vector<VehicleState> vehicles;  // size n_vehicles
    std::vector<bool> entered;
    int next_entry = 0;

    bool is_active(int id) const {
        return entered[id] && !vehicles[id].exited_at.has_value();
    }
    bool all_exited() const;
};

RoadWorld make_world(const RoadScenario& sc);

// Refreshes every active vehicle's broadcast channel from its true state,
// then lets the attack rewrite the hacked vehicle's entry.
void publish_broadcasts(RoadWorld& world, const RoadScenario& sc);

// Computes each active vehicle's command from the current snapshot:
// perception over all vehicles ahead (sensed immediate leader, broadcast or
// consensus otherwise), then the minimum car-following response.
void compute_accels(RoadWorld& world, const RoadScenario& sc);

// One dt advance: broadcasts, perception, commands, synchronous Euler
// update (v clamped at 0), exit marking, then due entries. A step on an
// all-exited world is the identity. Exit rows are appended to `log` when
// given, since exited vehicles are gone before the next logging pass.
void road_step(RoadWorld& world, const RoadScenario& sc,
               TrajectoryLog* log = nullptr);

// Runs the scenario to completion or max_sim_time. Deterministic: identical
// scenarios produce identical logs.
RunResult run_road(const RoadScenario& sc);

}  // namespace vcsim
