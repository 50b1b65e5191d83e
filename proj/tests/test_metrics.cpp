#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vcsim/metrics.hpp"

using namespace vcsim;

namespace {

std::vector<ExitRecord> staggered_exits(double travel_time) {
    std::vector<ExitRecord> exits;
    for (int i = 0; i < 5; ++i) {
        const double entry = 5.0 * i;
        exits.push_back({i, entry, entry + travel_time});
    }
    return exits;
}

MetricsReport report_with_mean(double mean) {
    MetricsReport r;
    r.n_vehicles = 5;
    r.mean_travel_time = mean;
    return r;
}

}  // namespace

TEST_CASE("per-vehicle times aggregate to mean and makespan") {
    const MetricsReport report = travel_times(staggered_exits(167.2), "base");
    CHECK(report.mean_travel_time == doctest::Approx(167.2));
    CHECK(report.makespan == doctest::Approx(187.2));
    CHECK(report.n_vehicles == 5);
    CHECK_FALSE(report.partial);
    CHECK(report.throughput == doctest::Approx(5 * 3600.0 / 187.2));
}

TEST_CASE("a single vehicle's mean equals its makespan") {
    const std::vector<ExitRecord> exits{{0, 0.0, 168.9}};
    const MetricsReport report = travel_times(exits);
    CHECK(report.mean_travel_time == doctest::Approx(168.9));
    CHECK(report.makespan == doctest::Approx(168.9));
}

TEST_CASE("an unexited vehicle flags the report partial") {
    std::vector<ExitRecord> exits = staggered_exits(167.2);
    exits[3].exited_at.reset();
    const MetricsReport report = travel_times(exits);
    CHECK(report.partial);
    CHECK(report.per_vehicle.size() == 4);
}

TEST_CASE("the reference comparison arithmetic") {
    const ComparisonReport cmp =
        compare(report_with_mean(167.2), report_with_mean(184.2),
                report_with_mean(178.1));
    // (184.2 - 167.2) / 167.2 and (184.2 - 178.1) / 184.2
    CHECK(cmp.attack_delta_pct == doctest::Approx(10.167464114832537));
    CHECK(cmp.defense_recovery_pct == doctest::Approx(3.311617806731815));
    CHECK(cmp.residual_delay_s == doctest::Approx(10.9));
}

TEST_CASE("identical means yield zero deltas") {
    const ComparisonReport cmp =
        compare(report_with_mean(150.0), report_with_mean(150.0),
                report_with_mean(150.0));
    CHECK(cmp.attack_delta_pct == doctest::Approx(0.0));
    CHECK(cmp.defense_recovery_pct == doctest::Approx(0.0));
    CHECK(cmp.residual_delay_s == doctest::Approx(0.0));
}

TEST_CASE("a full recovery leaves no residual delay") {
    const ComparisonReport cmp =
        compare(report_with_mean(100.0), report_with_mean(150.0),
                report_with_mean(100.0));
    CHECK(cmp.attack_delta_pct == doctest::Approx(50.0));
    CHECK(cmp.defense_recovery_pct == doctest::Approx(100.0 / 3.0));
    CHECK(cmp.residual_delay_s == doctest::Approx(0.0));
}

TEST_CASE("mismatched vehicle counts are rejected") {
    MetricsReport four;
    four.n_vehicles = 4;
    CHECK_THROWS_AS(compare(report_with_mean(1.0), four, report_with_mean(1.0)),
                    std::invalid_argument);
}

TEST_CASE("swapping attack and baseline flips the delta's sign") {
    const MetricsReport lo = report_with_mean(120.0);
    const MetricsReport hi = report_with_mean(150.0);
    const ComparisonReport forward = compare(lo, hi, lo);
    const ComparisonReport swapped = compare(hi, lo, lo);
    CHECK(forward.attack_delta_pct > 0.0);
    CHECK(swapped.attack_delta_pct < 0.0);
}

TEST_CASE("reports are recomputable from the raw exit record") {
    const std::vector<ExitRecord> exits = staggered_exits(171.4);
    const MetricsReport a = travel_times(exits, "x");
    const MetricsReport b = travel_times(exits, "x");
    CHECK(a == b);
}
