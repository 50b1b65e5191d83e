#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "vcsim/defenses.hpp"
#include "vcsim/perception.hpp"

using namespace vcsim;

namespace {

VehicleState make_vehicle(int id, double x, double v) {
    VehicleState s;
    s.id = id;
    s.x = x;
    s.v = v;
    s.x_broadcast = x;
    s.v_broadcast = v;
    return s;
}

}  // namespace

TEST_CASE("immediate leaders are sensed, not trusted") {
    VehicleState ego = make_vehicle(2, 900.0, 30.0);
    VehicleState leader = make_vehicle(1, 1000.0, 30.0);
    leader.x_broadcast = 500.0;  // spoofed
    leader.v_broadcast = 0.0;
    const PerceivedLeader seen = perceive_leader(ego, leader, true);
    CHECK(seen.position == doctest::Approx(1000.0));
    CHECK(seen.speed == doctest::Approx(30.0));
    CHECK(seen.via == PerceptionSource::Sensed);
}

TEST_CASE("non-adjacent leaders come from the broadcast channel") {
    VehicleState ego = make_vehicle(3, 100.0, 20.0);
    VehicleState leader = make_vehicle(0, 1000.0, 30.0);
    leader.x_broadcast = 500.0;
    leader.v_broadcast = 0.0;
    const PerceivedLeader seen = perceive_leader(ego, leader, false);
    CHECK(seen.position == doctest::Approx(500.0));
    CHECK(seen.speed == doctest::Approx(0.0));
    CHECK(seen.via == PerceptionSource::Broadcast);
}

TEST_CASE("a defense transform replaces the broadcast for non-adjacent leaders") {
    VehicleState ego = make_vehicle(3, 100.0, 20.0);
    VehicleState leader = make_vehicle(0, 1000.0, 30.0);
    leader.x_broadcast = 500.0;
    leader.v_broadcast = 0.0;
    const std::pair<double, double> follower_actual{800.0, 30.0};
    DefenseTransform defense =
        [&follower_actual](const VehicleState& l) -> std::optional<PerceivedPair> {
        return pairwise_consensus({l.x_broadcast, l.v_broadcast},
                                  follower_actual);
    };
    const PerceivedLeader seen = perceive_leader(ego, leader, false, &defense);
    CHECK(seen.position == doctest::Approx(650.0));  // (500 + 800) / 2
    CHECK(seen.speed == doctest::Approx(15.0));
    CHECK(seen.via == PerceptionSource::Consensus);

    // Adjacency always wins over the transform.
    const PerceivedLeader sensed = perceive_leader(ego, leader, true, &defense);
    CHECK(sensed.via == PerceptionSource::Sensed);
    CHECK(sensed.position == doctest::Approx(1000.0));
}

TEST_CASE("no leaders means the free-road response") {
    VehicleState ego = make_vehicle(0, 0.0, 0.0);
    CHECK(connected_accel(ego, {}, IdmParams{}) == doctest::Approx(1.0));
}

TEST_CASE("a single leader reduces to the plain car-following response") {
    const IdmParams p;
    VehicleState ego = make_vehicle(1, 900.0, 25.0);
    PerceivedLeader lead{0, 980.0, 28.0, PerceptionSource::Sensed};
    const std::vector<PerceivedLeader> leaders{lead};
    const double expected =
        idm_accel(ego.v, ego.v - lead.speed,
                  sanitize_gap(lead.position - ego.x - p.vehicle_length), p);
    CHECK(connected_accel(ego, leaders, p) == doctest::Approx(expected));
}

TEST_CASE("a spoofed overlapping leader drives the response to the cap") {
    VehicleState ego = make_vehicle(2, 900.0, 33.33);
    const std::vector<PerceivedLeader> leaders{
        {0, 400.0, 0.0, PerceptionSource::Broadcast},  // spoofed, behind ego
        {1, 960.0, 33.33, PerceptionSource::Sensed},
    };
    CHECK(connected_accel(ego, leaders, IdmParams{}) ==
          doctest::Approx(-kDecelCap));
}

TEST_CASE("connected response equals the minimum over single-leader responses") {
    const IdmParams p;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pos(0.0, 2000.0);
    std::uniform_real_distribution<double> speed(0.0, 40.0);
    std::uniform_int_distribution<int> count(1, 5);
    for (int trial = 0; trial < 300; ++trial) {
        VehicleState ego = make_vehicle(9, pos(rng), speed(rng));
        std::vector<PerceivedLeader> leaders;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) {
            leaders.push_back({i, pos(rng), speed(rng),
                               PerceptionSource::Broadcast});
        }
        double expected = idm_accel(
            ego.v, ego.v - leaders[0].speed,
            sanitize_gap(leaders[0].position - ego.x - p.vehicle_length), p);
        for (const PerceivedLeader& lead : leaders) {
            expected = std::min(
                expected,
                idm_accel(ego.v, ego.v - lead.speed,
                          sanitize_gap(lead.position - ego.x -
                                       p.vehicle_length),
                          p));
        }
        CHECK(connected_accel(ego, leaders, p) == doctest::Approx(expected));
    }
}

TEST_CASE("sensed perception is invariant under broadcast tampering") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> pos(0.0, 5000.0);
    std::uniform_real_distribution<double> speed(0.0, 40.0);
    std::uniform_real_distribution<double> junk(-1000.0, 1000.0);
    for (int trial = 0; trial < 300; ++trial) {
        VehicleState ego = make_vehicle(5, pos(rng), speed(rng));
        VehicleState leader = make_vehicle(4, pos(rng), speed(rng));
        const PerceivedLeader before = perceive_leader(ego, leader, true);
        leader.x_broadcast = junk(rng);
        leader.v_broadcast = junk(rng);
        const PerceivedLeader after = perceive_leader(ego, leader, true);
        CHECK(before.position == after.position);
        CHECK(before.speed == after.speed);
        CHECK(after.via == PerceptionSource::Sensed);
    }
}

TEST_CASE("untampered broadcasts carry the true state") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> pos(0.0, 5000.0);
    std::uniform_real_distribution<double> speed(0.0, 40.0);
    for (int trial = 0; trial < 300; ++trial) {
        VehicleState ego = make_vehicle(5, pos(rng), speed(rng));
        VehicleState leader = make_vehicle(2, pos(rng), speed(rng));
        const PerceivedLeader seen = perceive_leader(ego, leader, false);
        CHECK(seen.position == leader.x);
        CHECK(seen.speed == leader.v);
    }
}
