#include <map>
#include <stdexcept>

#include "doctest.h"
#include "vcsim/attacks.hpp"

using namespace vcsim;

namespace {

VehicleState vehicle_at(int id, double x, double v) {
    VehicleState s;
    s.id = id;
    s.x = x;
    s.v = v;
    s.x_broadcast = x;
    s.v_broadcast = v;
    return s;
}

}  // namespace

TEST_CASE("the hacked vehicle broadcasts the ghost state") {
    const BroadcastSpoofSpec spec;  // vehicle 0, v_f = 0, x_f = -500
    const auto [xb, vb] = spoof_broadcast(vehicle_at(0, 1000.0, 30.0), spec, 12.0);
    CHECK(xb == doctest::Approx(500.0));
    CHECK(vb == doctest::Approx(0.0));
}

TEST_CASE("other vehicles broadcast truthfully") {
    const BroadcastSpoofSpec spec;
    const auto [xb, vb] = spoof_broadcast(vehicle_at(3, 800.0, 25.0), spec, 12.0);
    CHECK(xb == doctest::Approx(800.0));
    CHECK(vb == doctest::Approx(25.0));
}

TEST_CASE("negative broadcast positions are legal") {
    const BroadcastSpoofSpec spec;
    const auto [xb, vb] = spoof_broadcast(vehicle_at(0, 300.0, 33.0), spec, 1.0);
    CHECK(xb == doctest::Approx(-200.0));
    CHECK(vb == doctest::Approx(0.0));
}

TEST_CASE("the spoof honors its active window") {
    BroadcastSpoofSpec spec;
    spec.window = ActiveWindow{10.0, 20.0};
    const VehicleState hacked = vehicle_at(0, 1000.0, 30.0);
    auto before = spoof_broadcast(hacked, spec, 5.0);
    CHECK(before.first == doctest::Approx(1000.0));
    CHECK(before.second == doctest::Approx(30.0));
    auto during = spoof_broadcast(hacked, spec, 15.0);
    CHECK(during.first == doctest::Approx(500.0));
    auto after = spoof_broadcast(hacked, spec, 25.0);
    CHECK(after.first == doctest::Approx(1000.0));
}

TEST_CASE("spoofing reads only the true state and never mutates it") {
    const BroadcastSpoofSpec spec;
    VehicleState hacked = vehicle_at(0, 1200.0, 31.0);
    const VehicleState snapshot = hacked;
    auto first = spoof_broadcast(hacked, spec, 3.0);
    // Apply the result to the broadcast channel and spoof again: same output.
    hacked.x_broadcast = first.first;
    hacked.v_broadcast = first.second;
    auto second = spoof_broadcast(hacked, spec, 3.0);
    CHECK(first == second);
    CHECK(hacked.x == snapshot.x);
    CHECK(hacked.v == snapshot.v);
}

TEST_CASE("link spoofing rewrites only targeted entries") {
    const std::map<int, double> times{{1, 30.0}, {2, 45.0}};
    LinkSpoofSpec spec;
    spec.target_links = {1};
    spec.fake_travel_time = 300.0;
    const auto out = spoof_link_times(times, spec, 0.0);
    CHECK(out.at(1) == doctest::Approx(300.0));
    CHECK(out.at(2) == doctest::Approx(45.0));
    CHECK(times.at(1) == doctest::Approx(30.0));  // input untouched
}

TEST_CASE("link spoofing outside its window is the identity") {
    const std::map<int, double> times{{1, 30.0}, {2, 45.0}};
    LinkSpoofSpec spec;
    spec.target_links = {1};
    spec.fake_travel_time = 300.0;
    spec.window = ActiveWindow{100.0, 200.0};
    CHECK(spoof_link_times(times, spec, 0.0) == times);
}

TEST_CASE("link spoofing can blanket every link") {
    const std::map<int, double> times{{1, 30.0}, {2, 45.0}};
    LinkSpoofSpec spec;
    spec.target_links = {1, 2};
    spec.fake_travel_time = 10.0;
    const auto out = spoof_link_times(times, spec, 0.0);
    CHECK(out.at(1) == doctest::Approx(10.0));
    CHECK(out.at(2) == doctest::Approx(10.0));
}

TEST_CASE("unknown target links are rejected") {
    const std::map<int, double> times{{1, 30.0}};
    LinkSpoofSpec spec;
    spec.target_links = {9};
    CHECK_THROWS_AS(spoof_link_times(times, spec, 0.0), std::invalid_argument);
}

TEST_CASE("link attack invariants") {
    LinkSpoofSpec spec;
    spec.target_links = {};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.target_links = {1};
    spec.fake_travel_time = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.fake_travel_time = 10.0;
    CHECK_NOTHROW(spec.validate());
}
