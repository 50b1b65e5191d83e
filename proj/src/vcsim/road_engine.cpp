#include "vcsim/road_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vcsim/perception.hpp"

namespace vcsim {

namespace {
constexpr double kTimeEps = 1e-9;
}

void RoadSpec::validate() const {
    if (!(road_length > 0.0)) {
        throw std::invalid_argument("road: road_length must be > 0");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("road: dt must be > 0");
    }
    if (entry_interval < 0.0) {
        throw std::invalid_argument("road: entry_interval must be >= 0");
    }
    if (n_vehicles < 1) {
        throw std::invalid_argument("road: n_vehicles must be >= 1");
    }
    if (!(max_sim_time > n_vehicles * entry_interval)) {
        throw std::invalid_argument(
            "road: max_sim_time must exceed n_vehicles * entry_interval");
    }
}

EntryPlan schedule_entry(int i, const RoadSpec& spec) {
    if (i < 0 || i >= spec.n_vehicles) {
        throw std::out_of_range("schedule_entry: vehicle index out of range");
    }
    return {i * spec.entry_interval, 0.0, spec.entry_speed};
}

bool RoadWorld::all_exited() const {
    if (next_entry < static_cast<int>(vehicles.size())) {
        return false;
    }
    for (const VehicleState& v : vehicles) {
        if (!v.exited_at) {
            return false;
        }
    }
    return true;
}

namespace {

// Inserts every vehicle whose scheduled entry time has arrived. A newcomer
// normally starts at x = 0; when the previous vehicle is still within
// s0 + L of the entry point, the newcomer is placed upstream at exactly the
// jam distance behind it instead, so entries never overlap and the waiting
// time spent queued at the entrance stays on the vehicle's clock.
void insert_due_entries(RoadWorld& world, const RoadScenario& sc) {
    const int n = sc.road.n_vehicles;
    while (world.next_entry < n) {
        const EntryPlan plan = schedule_entry(world.next_entry, sc.road);
        if (plan.entry_time > world.t + kTimeEps) {
            break;
        }
        double x0 = plan.x0;
        if (world.next_entry > 0) {
            const VehicleState& prev = world.vehicles[world.next_entry - 1];
            const double clearance = sc.idm.min_gap + sc.idm.vehicle_length;
            if (!prev.exited_at && prev.x < x0 + clearance) {
                x0 = prev.x - clearance;
            }
        }
        VehicleState& veh = world.vehicles[world.next_entry];
        veh.x = x0;
        veh.v = plan.v0;
        veh.accel = 0.0;
        veh.x_broadcast = veh.x;
        veh.v_broadcast = veh.v;
        veh.entered_at = world.t;
        world.entered[world.next_entry] = true;
        ++world.next_entry;
    }
}

std::pair<double, double> broadcast_of(const VehicleState& veh,
                                       const RoadScenario& sc, double t) {
    if (sc.attack) {
        return spoof_broadcast(veh, *sc.attack, t);
    }
    return {veh.x, veh.v};
}

// Consensus transform validating one leader on behalf of `ego`. The
// follower's actual state travels on its own broadcast channel; under the
// single-hacked-vehicle threat model that channel is truthful for every
// vehicle except the hacked one.
DefenseTransform make_defense(const RoadWorld& world, const RoadScenario& sc,
                              const VehicleState& ego) {
    switch (sc.defense.mode) {
        case ConsensusMode::Off:
            return {};
        case ConsensusMode::PairwiseAverage:
            return [&world, &ego](const VehicleState& leader)
                       -> std::optional<PerceivedPair> {
                const int follower_id = leader.id + 1;
                if (follower_id == ego.id) {
                    return pairwise_consensus(
                        {leader.x_broadcast, leader.v_broadcast},
                        {ego.x, ego.v});
                }
                const VehicleState& follower = world.vehicles[follower_id];
                return pairwise_consensus(
                    {leader.x_broadcast, leader.v_broadcast},
                    {follower.x_broadcast, follower.v_broadcast});
            };
        case ConsensusMode::ProximityWeighted:
            return [&world, &ego, scale = sc.defense.proximity_scale](
                       const VehicleState& leader)
                       -> std::optional<PerceivedPair> {
                const int follower_id = leader.id + 1;
                ConsensusCandidate from_leader{
                    {leader.x_broadcast, leader.v_broadcast},
                    std::abs(leader.x_broadcast - ego.x)};
                ConsensusCandidate from_follower =
                    follower_id == ego.id
                        ? ConsensusCandidate{{ego.x, ego.v}, 0.0}
                        : ConsensusCandidate{
                              {world.vehicles[follower_id].x_broadcast,
                               world.vehicles[follower_id].v_broadcast},
                              std::abs(
                                  world.vehicles[follower_id].x_broadcast -
                                  ego.x)};
                const ConsensusCandidate candidates[] = {from_leader,
                                                         from_follower};
                return proximity_weighted_consensus(candidates, scale);
            };
    }
    return {};
}

// Euler update, exit marking and due entries: the state-transition half of
// a step. Exit rows are logged here because exited vehicles are dropped
// from every later pass.
void integrate_and_transition(RoadWorld& world, const RoadScenario& sc,
                              TrajectoryLog* log) {
    const int n = sc.road.n_vehicles;
    for (int i = 0; i < n; ++i) {
        if (!world.is_active(i)) {
            continue;
        }
        VehicleState& veh = world.vehicles[i];
        veh.v = std::max(0.0, veh.v + veh.accel * sc.road.dt);
        veh.x += veh.v * sc.road.dt;
    }
    ++world.step_count;
    world.t = world.step_count * sc.road.dt;

    for (int i = 0; i < n; ++i) {
        if (!world.is_active(i)) {
            continue;
        }
        VehicleState& veh = world.vehicles[i];
        if (veh.x >= sc.road.road_length) {
            veh.exited_at = world.t;
            veh.accel = 0.0;
            std::tie(veh.x_broadcast, veh.v_broadcast) =
                broadcast_of(veh, sc, world.t);
            if (log != nullptr) {
                log->push_back({world.t, veh.id, veh.x, veh.v, veh.accel,
                                veh.x_broadcast, veh.v_broadcast});
            }
        }
    }

    insert_due_entries(world, sc);
}

}  // namespace

RoadWorld make_world(const RoadScenario& sc) {
    sc.road.validate();
    sc.idm.validate();
    sc.defense.validate();
    RoadWorld world;
    world.vehicles.resize(sc.road.n_vehicles);
    world.entered.assign(sc.road.n_vehicles, false);
    for (int i = 0; i < sc.road.n_vehicles; ++i) {
        world.vehicles[i].id = i;
    }
    insert_due_entries(world, sc);
    return world;
}

void publish_broadcasts(RoadWorld& world, const RoadScenario& sc) {
    for (VehicleState& veh : world.vehicles) {
        if (!world.is_active(veh.id)) {
            continue;
        }
        std::tie(veh.x_broadcast, veh.v_broadcast) =
            broadcast_of(veh, sc, world.t);
    }
}

void compute_accels(RoadWorld& world, const RoadScenario& sc) {
    const int n = sc.road.n_vehicles;
    std::vector<PerceivedLeader> leaders;
    leaders.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (!world.is_active(i)) {
            continue;
        }
        VehicleState& ego = world.vehicles[i];
        leaders.clear();
        int immediate = -1;
        for (int j = 0; j < i; ++j) {
            if (world.is_active(j)) {
                immediate = j;  // highest active id ahead wins
            }
        }
        const DefenseTransform defense = make_defense(world, sc, ego);
        const DefenseTransform* defense_ptr = defense ? &defense : nullptr;
        for (int j = 0; j < i; ++j) {
            if (!world.is_active(j)) {
                continue;
            }
            leaders.push_back(perceive_leader(ego, world.vehicles[j],
                                              j == immediate, defense_ptr));
        }
        ego.accel = connected_accel(ego, leaders, sc.idm);
    }
}

void road_step(RoadWorld& world, const RoadScenario& sc, TrajectoryLog* log) {
    if (world.all_exited()) {
        return;
    }
    publish_broadcasts(world, sc);
    compute_accels(world, sc);
    integrate_and_transition(world, sc, log);
}

RunResult run_road(const RoadScenario& sc) {
    RoadWorld world = make_world(sc);
    RunResult result;
    while (true) {
        publish_broadcasts(world, sc);
        compute_accels(world, sc);
        for (int i = 0; i < sc.road.n_vehicles; ++i) {
            if (!world.is_active(i)) {
                continue;
            }
            const VehicleState& veh = world.vehicles[i];
            result.log.push_back({world.t, veh.id, veh.x, veh.v, veh.accel,
                                  veh.x_broadcast, veh.v_broadcast});
        }
        if (world.all_exited()) {
            result.completed = true;
            break;
        }
        if (world.t >= sc.road.max_sim_time - kTimeEps) {
            result.completed = false;
            break;
        }
        integrate_and_transition(world, sc, &result.log);
    }
    result.end_time = world.t;
    result.exits.reserve(sc.road.n_vehicles);
    for (int i = 0; i < sc.road.n_vehicles; ++i) {
        const VehicleState& veh = world.vehicles[i];
        ExitRecord rec;
        rec.id = i;
        rec.entered_at = world.entered[i]
                             ? veh.entered_at
                             : schedule_entry(i, sc.road).entry_time;
        rec.exited_at = veh.exited_at;
        result.exits.push_back(rec);
    }
    return result;
}

}  // namespace vcsim
