#include "vcsim.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "vcsim/config.hpp"
#include "vcsim/metrics.hpp"
#include "vcsim/net_sim.hpp"
#include "vcsim/outputs.hpp"
#include "vcsim/road_engine.hpp"

struct vcsim_scenario {
    vcsim::ScenarioSpec spec;
    std::string base_dir;
};

struct vcsim_result {
    vcsim::ScenarioSpec spec;
    std::optional<vcsim::RunResult> road;
    std::optional<vcsim::NetRunResult> net;
    vcsim::MetricsReport metrics;
};

struct vcsim_comparison {
    vcsim::ComparisonReport report;
    vcsim::ScenarioSpec defense_spec;  // provenance for the written report
};

namespace {

thread_local std::string g_last_error;

vcsim_status fail(vcsim_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

vcsim_status ok() {
    g_last_error.clear();
    return VCSIM_OK;
}

// Exceptions crossing the C boundary become status codes.
template <typename Fn>
vcsim_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const vcsim::ConfigError& e) {
        const bool syntax =
            std::string_view(e.what()).find("syntax error") !=
            std::string_view::npos;
        return fail(syntax ? VCSIM_ERR_PARSE : VCSIM_ERR_VALIDATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(VCSIM_ERR_VALIDATION, e.what());
    } catch (const std::out_of_range& e) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(VCSIM_ERR_IO, e.what());
    } catch (...) {
        return fail(VCSIM_ERR_INTERNAL, "unknown error");
    }
}

vcsim::MetricsReport metrics_for(const vcsim_result& result) {
    if (result.road) {
        return vcsim::travel_times(result.road->exits, "run");
    }
    std::vector<vcsim::ExitRecord> exits;
    exits.reserve(result.net->outcomes.size());
    for (const vcsim::VehicleOutcome& out : result.net->outcomes) {
        exits.push_back({out.id, out.departed_at, out.arrived_at});
    }
    return vcsim::travel_times(exits, "run");
}

}  // namespace

extern "C" {

const char* vcsim_version(void) { return "0.1.0"; }

const char* vcsim_status_name(vcsim_status status) {
    switch (status) {
        case VCSIM_OK: return "ok";
        case VCSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
        case VCSIM_ERR_PARSE: return "parse error";
        case VCSIM_ERR_VALIDATION: return "validation error";
        case VCSIM_ERR_IO: return "i/o error";
        case VCSIM_ERR_MISMATCH: return "mismatched inputs";
        case VCSIM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* vcsim_last_error(void) { return g_last_error.c_str(); }

vcsim_status vcsim_scenario_parse(const char* config_text,
                                  const char* base_dir, vcsim_scenario** out) {
    if (config_text == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        auto* handle = new vcsim_scenario{
            vcsim::parse_config(config_text),
            base_dir != nullptr ? base_dir : ""};
        *out = handle;
        return ok();
    });
}

vcsim_status vcsim_scenario_load(const char* config_path,
                                 vcsim_scenario** out) {
    if (config_path == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        auto spec = vcsim::load_config(config_path);
        std::string base =
            std::filesystem::path(config_path).parent_path().string();
        *out = new vcsim_scenario{std::move(spec), std::move(base)};
        return ok();
    });
}

void vcsim_scenario_free(vcsim_scenario* scenario) { delete scenario; }

vcsim_scenario_kind vcsim_scenario_get_kind(const vcsim_scenario* scenario) {
    return scenario->spec.kind == vcsim::ScenarioKind::SingleRoad
               ? VCSIM_SCENARIO_SINGLE_ROAD
               : VCSIM_SCENARIO_NETWORK;
}

vcsim_status vcsim_scenario_render(const vcsim_scenario* scenario,
                                   char** out) {
    if (scenario == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const std::string text = vcsim::render_config(scenario->spec);
        char* copy = new char[text.size() + 1];
        std::memcpy(copy, text.c_str(), text.size() + 1);
        *out = copy;
        return ok();
    });
}

void vcsim_string_free(char* text) { delete[] text; }

vcsim_status vcsim_scenario_set_dt(vcsim_scenario* scenario, double dt) {
    if (scenario == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null scenario");
    }
    if (!(dt > 0.0)) {
        return fail(VCSIM_ERR_VALIDATION, "dt override must be > 0");
    }
    if (scenario->spec.kind == vcsim::ScenarioKind::SingleRoad) {
        scenario->spec.road.dt = dt;
    } else {
        scenario->spec.network.dt = dt;
    }
    return ok();
}

vcsim_status vcsim_scenario_set_seed(vcsim_scenario* scenario,
                                     unsigned long long seed) {
    if (scenario == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null scenario");
    }
    scenario->spec.seed = seed;
    return ok();
}

vcsim_status vcsim_scenario_set_out_dir(vcsim_scenario* scenario,
                                        const char* dir) {
    if (scenario == nullptr || dir == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    scenario->spec.out_dir = std::string(dir);
    return ok();
}

vcsim_status vcsim_scenario_derive_baseline(const vcsim_scenario* full,
                                            vcsim_scenario** out) {
    if (full == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = new vcsim_scenario{vcsim::derive_triad(full->spec).baseline,
                                  full->base_dir};
        return ok();
    });
}

vcsim_status vcsim_scenario_derive_attack_only(const vcsim_scenario* full,
                                               vcsim_scenario** out) {
    if (full == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = new vcsim_scenario{vcsim::derive_triad(full->spec).attack,
                                  full->base_dir};
        return ok();
    });
}

vcsim_status vcsim_run(const vcsim_scenario* scenario, vcsim_result** out) {
    if (scenario == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        auto result = std::make_unique<vcsim_result>();
        result->spec = scenario->spec;
        if (scenario->spec.kind == vcsim::ScenarioKind::SingleRoad) {
            result->road =
                vcsim::run_road(vcsim::to_road_scenario(scenario->spec));
        } else {
            result->net = vcsim::run_network(vcsim::to_network_scenario(
                scenario->spec, scenario->base_dir));
        }
        result->metrics = metrics_for(*result);
        *out = result.release();
        return ok();
    });
}

void vcsim_result_free(vcsim_result* result) { delete result; }

int vcsim_result_is_complete(const vcsim_result* result) {
    if (result->road) {
        return result->road->completed ? 1 : 0;
    }
    return result->net->completed ? 1 : 0;
}

int vcsim_result_vehicle_count(const vcsim_result* result) {
    return result->metrics.n_vehicles;
}

vcsim_status vcsim_result_travel_time(const vcsim_result* result,
                                      int vehicle_id, double* out) {
    if (result == nullptr || out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    if (vehicle_id < 0 || vehicle_id >= result->metrics.n_vehicles) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "vehicle id out of range");
    }
    if (result->road) {
        const vcsim::ExitRecord& rec = result->road->exits[vehicle_id];
        if (!rec.exited_at) {
            return fail(VCSIM_ERR_VALIDATION, "vehicle never exited");
        }
        *out = *rec.exited_at - rec.entered_at;
        return ok();
    }
    const vcsim::VehicleOutcome& rec = result->net->outcomes[vehicle_id];
    if (!rec.arrived_at) {
        return fail(VCSIM_ERR_VALIDATION, "vehicle never arrived");
    }
    *out = *rec.arrived_at - rec.departed_at;
    return ok();
}

double vcsim_result_mean_travel_time(const vcsim_result* result) {
    return result->metrics.mean_travel_time;
}

double vcsim_result_makespan(const vcsim_result* result) {
    return result->metrics.makespan;
}

double vcsim_result_throughput(const vcsim_result* result) {
    return result->metrics.throughput;
}

double vcsim_result_end_time(const vcsim_result* result) {
    if (result->road) {
        return result->road->end_time;
    }
    return result->net->end_time;
}

vcsim_status vcsim_result_write_outputs(const vcsim_result* result,
                                        const char* out_dir) {
    if (result == nullptr || out_dir == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        vcsim::write_run_outputs(out_dir, result->spec,
                                 result->road ? &*result->road : nullptr,
                                 result->net ? &*result->net : nullptr,
                                 result->metrics);
        return ok();
    });
}

vcsim_status vcsim_compare(const vcsim_result* baseline,
                           const vcsim_result* attack,
                           const vcsim_result* defense,
                           vcsim_comparison** out) {
    if (baseline == nullptr || attack == nullptr || defense == nullptr ||
        out == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        if (baseline->metrics.n_vehicles != attack->metrics.n_vehicles ||
            baseline->metrics.n_vehicles != defense->metrics.n_vehicles) {
            return fail(VCSIM_ERR_MISMATCH,
                        "comparison runs cover different vehicle counts");
        }
        vcsim::MetricsReport b = baseline->metrics;
        vcsim::MetricsReport a = attack->metrics;
        vcsim::MetricsReport d = defense->metrics;
        b.label = "baseline";
        a.label = "attack";
        d.label = "defense";
        *out = new vcsim_comparison{vcsim::compare(b, a, d), defense->spec};
        return ok();
    });
}

void vcsim_comparison_free(vcsim_comparison* comparison) { delete comparison; }

double vcsim_comparison_attack_delta_pct(const vcsim_comparison* comparison) {
    return comparison->report.attack_delta_pct;
}

double vcsim_comparison_defense_recovery_pct(
    const vcsim_comparison* comparison) {
    return comparison->report.defense_recovery_pct;
}

double vcsim_comparison_residual_delay_s(const vcsim_comparison* comparison) {
    return comparison->report.residual_delay_s;
}

vcsim_status vcsim_comparison_write(const vcsim_comparison* comparison,
                                    const char* path) {
    if (comparison == nullptr || path == nullptr) {
        return fail(VCSIM_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        vcsim::write_comparison_json(path, comparison->report,
                                     comparison->defense_spec);
        return ok();
    });
}

}  // extern "C"
