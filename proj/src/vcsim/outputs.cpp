#include "vcsim/outputs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vcsim {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    return out;
}

void write_provenance(std::ofstream& out, const ScenarioSpec& spec) {
    std::istringstream config(render_config(spec));
    std::string line;
    while (std::getline(config, line)) {
        out << "# " << line << "\n";
    }
}

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

nlohmann::ordered_json metrics_json(const MetricsReport& report) {
    nlohmann::ordered_json m;
    m["label"] = report.label;
    m["n_vehicles"] = report.n_vehicles;
    m["per_vehicle_travel_time_s"] = report.per_vehicle;
    m["mean_travel_time_s"] = report.mean_travel_time;
    m["makespan_s"] = report.makespan;
    m["throughput_veh_per_hour"] = report.throughput;
    m["partial"] = report.partial;
    return m;
}

void write_series(const std::string& path, const TrajectoryLog& log,
                  int n_vehicles, const ScenarioSpec& spec, bool speed) {
    std::ofstream out = open_out(path);
    write_provenance(out, spec);
    out << "time_s";
    for (int i = 0; i < n_vehicles; ++i) {
        out << ",veh_" << i;
    }
    out << "\n";
    // The log is time-ordered with ids ascending within a timestamp.
    std::map<double, std::map<int, double>> rows;
    for (const TrajectorySample& s : log) {
        rows[s.t][s.vehicle_id] = speed ? s.v : s.x;
    }
    for (const auto& [t, values] : rows) {
        out << fixed6(t);
        for (int i = 0; i < n_vehicles; ++i) {
            out << ",";
            auto it = values.find(i);
            if (it != values.end()) {
                out << fixed6(it->second);
            }
        }
        out << "\n";
    }
}

}  // namespace

void write_trajectory_csv(const std::string& path, const TrajectoryLog& log,
                          const ScenarioSpec& spec) {
    std::ofstream out = open_out(path);
    write_provenance(out, spec);
    out << "time_s,vehicle_id,position_m,speed_mps,accel_mps2,"
           "broadcast_position_m,broadcast_speed_mps\n";
    for (const TrajectorySample& s : log) {
        out << fixed6(s.t) << "," << s.vehicle_id << "," << fixed6(s.x) << ","
            << fixed6(s.v) << "," << fixed6(s.accel) << ","
            << fixed6(s.x_broadcast) << "," << fixed6(s.v_broadcast) << "\n";
    }
}

void write_distance_series(const std::string& path, const TrajectoryLog& log,
                           int n_vehicles, const ScenarioSpec& spec) {
    write_series(path, log, n_vehicles, spec, /*speed=*/false);
}

void write_speed_series(const std::string& path, const TrajectoryLog& log,
                        int n_vehicles, const ScenarioSpec& spec) {
    write_series(path, log, n_vehicles, spec, /*speed=*/true);
}

void write_metrics_json(const std::string& path, const MetricsReport& report,
                        const ScenarioSpec& spec) {
    std::ofstream out = open_out(path);
    nlohmann::ordered_json root;
    root["metrics"] = metrics_json(report);
    root["config"] = nlohmann::ordered_json::parse(render_config(spec));
    out << root.dump(2) << "\n";
}

void write_comparison_json(const std::string& path,
                           const ComparisonReport& report,
                           const ScenarioSpec& spec) {
    std::ofstream out = open_out(path);
    nlohmann::ordered_json root;
    root["baseline"] = metrics_json(report.baseline);
    root["attack"] = metrics_json(report.attack);
    root["defense"] = metrics_json(report.defense);
    root["attack_delta_pct"] = report.attack_delta_pct;
    root["defense_recovery_pct"] = report.defense_recovery_pct;
    root["residual_delay_s"] = report.residual_delay_s;
    root["config"] = nlohmann::ordered_json::parse(render_config(spec));
    out << root.dump(2) << "\n";
}

void write_route_records(const std::string& path, const NetRunResult& result,
                         const ScenarioSpec& spec) {
    std::ofstream out = open_out(path);
    write_provenance(out, spec);
    out << "vehicle_id,origin,destination,departed_s,arrived_s,travel_time_s,"
           "route_links\n";
    for (const VehicleOutcome& v : result.outcomes) {
        out << v.id << "," << v.origin << "," << v.destination << ","
            << fixed6(v.departed_at) << ",";
        if (v.arrived_at) {
            out << fixed6(*v.arrived_at) << ","
                << fixed6(*v.arrived_at - v.departed_at);
        } else {
            out << ",";
        }
        out << ",";
        for (size_t i = 0; i < v.route_links.size(); ++i) {
            if (i > 0) {
                out << " ";
            }
            out << v.route_links[i];
        }
        out << "\n";
    }
}

void write_run_outputs(const std::string& dir, const ScenarioSpec& spec,
                       const RunResult* road_result,
                       const NetRunResult* net_result,
                       const MetricsReport& metrics) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    if (road_result != nullptr) {
        write_trajectory_csv((base / "trajectory.csv").string(),
                             road_result->log, spec);
        write_distance_series((base / "distance_time.csv").string(),
                              road_result->log, spec.road.n_vehicles, spec);
        write_speed_series((base / "speed_time.csv").string(),
                           road_result->log, spec.road.n_vehicles, spec);
    }
    if (net_result != nullptr) {
        write_route_records((base / "routes.csv").string(), *net_result, spec);
    }
    write_metrics_json((base / "metrics.json").string(), metrics, spec);
}

}  // namespace vcsim
