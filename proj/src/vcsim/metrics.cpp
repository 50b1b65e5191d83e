#include "vcsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace vcsim {

MetricsReport travel_times(const std::vector<ExitRecord>& exits,
                           std::string label) {
    MetricsReport report;
    report.label = std::move(label);
    report.n_vehicles = static_cast<int>(exits.size());
    double first_entry = 0.0;
    double last_exit = 0.0;
    bool any = false;
    for (const ExitRecord& rec : exits) {
        if (!rec.exited_at) {
            report.partial = true;
            continue;
        }
        report.per_vehicle.push_back(*rec.exited_at - rec.entered_at);
        if (!any) {
            first_entry = rec.entered_at;
            last_exit = *rec.exited_at;
            any = true;
        } else {
            first_entry = std::min(first_entry, rec.entered_at);
            last_exit = std::max(last_exit, *rec.exited_at);
        }
    }
    if (!report.per_vehicle.empty()) {
        double sum = 0.0;
        for (double t : report.per_vehicle) {
            sum += t;
        }
        report.mean_travel_time = sum / report.per_vehicle.size();
        report.makespan = last_exit - first_entry;
        if (report.makespan > 0.0) {
            report.throughput =
                report.per_vehicle.size() * 3600.0 / report.makespan;
        }
    }
    return report;
}

ComparisonReport compare(const MetricsReport& baseline,
                         const MetricsReport& attack,
                         const MetricsReport& defense) {
    if (baseline.n_vehicles != attack.n_vehicles ||
        baseline.n_vehicles != defense.n_vehicles) {
        throw std::invalid_argument(
            "compare: reports cover different vehicle counts");
    }
    ComparisonReport cmp;
    cmp.baseline = baseline;
    cmp.attack = attack;
    cmp.defense = defense;
    if (baseline.mean_travel_time != 0.0) {
        cmp.attack_delta_pct = 100.0 *
                               (attack.mean_travel_time -
                                baseline.mean_travel_time) /
                               baseline.mean_travel_time;
    }
    if (attack.mean_travel_time != 0.0) {
        cmp.defense_recovery_pct = 100.0 *
                                   (attack.mean_travel_time -
                                    defense.mean_travel_time) /
                                   attack.mean_travel_time;
    }
    cmp.residual_delay_s =
        defense.mean_travel_time - baseline.mean_travel_time;
    return cmp;
}

}  // namespace vcsim
