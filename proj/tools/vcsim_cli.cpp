// Command-line front end for the vcsim shared library. Talks to the
// simulator exclusively through the C API in vcsim.h.
//
// Exit codes: 0 success, 1 parse/validation error, 2 a run hit its time
// horizon with vehicles still en route.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vcsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNonTermination = 2;

struct ScenarioDeleter {
    void operator()(vcsim_scenario* s) const { vcsim_scenario_free(s); }
};
struct ResultDeleter {
    void operator()(vcsim_result* r) const { vcsim_result_free(r); }
};
struct ComparisonDeleter {
    void operator()(vcsim_comparison* c) const { vcsim_comparison_free(c); }
};

using ScenarioPtr = std::unique_ptr<vcsim_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<vcsim_result, ResultDeleter>;
using ComparisonPtr = std::unique_ptr<vcsim_comparison, ComparisonDeleter>;

int report_error(const char* action, vcsim_status status) {
    std::fprintf(stderr, "vcsim: %s failed: %s (%s)\n", action,
                 vcsim_last_error(), vcsim_status_name(status));
    return kExitValidation;
}

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    double dt = 0.0;
    unsigned long long seed = 0;
    bool has_dt = false;
    bool has_seed = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--dt", opts.dt, "time step override in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "random seed (network scenarios)");
}

ScenarioPtr load_scenario(const CommonOptions& opts, CLI::App* cmd, int& rc) {
    vcsim_scenario* raw = nullptr;
    vcsim_status status = vcsim_scenario_load(opts.config_path.c_str(), &raw);
    if (status != VCSIM_OK) {
        rc = report_error("loading config", status);
        return nullptr;
    }
    ScenarioPtr scenario(raw);
    if (cmd->count("--dt") > 0) {
        status = vcsim_scenario_set_dt(scenario.get(), opts.dt);
        if (status != VCSIM_OK) {
            rc = report_error("applying --dt", status);
            return nullptr;
        }
    }
    if (cmd->count("--seed") > 0) {
        vcsim_scenario_set_seed(scenario.get(), opts.seed);
    }
    if (!opts.out_dir.empty()) {
        vcsim_scenario_set_out_dir(scenario.get(), opts.out_dir.c_str());
    }
    return scenario;
}

std::string resolved_out_dir(const CommonOptions& opts) {
    return opts.out_dir.empty() ? std::string("out") : opts.out_dir;
}

void print_summary(const char* label, const vcsim_result* result) {
    std::printf("%-10s mean travel time %8.2f s  makespan %8.2f s  "
                "throughput %7.1f veh/h%s\n",
                label, vcsim_result_mean_travel_time(result),
                vcsim_result_makespan(result),
                vcsim_result_throughput(result),
                vcsim_result_is_complete(result) ? "" : "  [incomplete]");
}

int run_one(const CommonOptions& opts, CLI::App* cmd, bool require_network) {
    int rc = kExitOk;
    ScenarioPtr scenario = load_scenario(opts, cmd, rc);
    if (!scenario) {
        return rc;
    }
    if (require_network &&
        vcsim_scenario_get_kind(scenario.get()) != VCSIM_SCENARIO_NETWORK) {
        std::fprintf(stderr,
                     "vcsim: the network subcommand needs a network scenario "
                     "config\n");
        return kExitValidation;
    }
    vcsim_result* raw = nullptr;
    vcsim_status status = vcsim_run(scenario.get(), &raw);
    if (status != VCSIM_OK) {
        return report_error("run", status);
    }
    ResultPtr result(raw);
    const std::string out_dir = resolved_out_dir(opts);
    status = vcsim_result_write_outputs(result.get(), out_dir.c_str());
    if (status != VCSIM_OK) {
        return report_error("writing outputs", status);
    }
    print_summary("run", result.get());
    std::printf("outputs written to %s\n", out_dir.c_str());
    if (!vcsim_result_is_complete(result.get())) {
        std::fprintf(stderr,
                     "vcsim: horizon reached with vehicles still en route\n");
        return kExitNonTermination;
    }
    return kExitOk;
}

int run_compare(const CommonOptions& opts, CLI::App* cmd) {
    int rc = kExitOk;
    ScenarioPtr full = load_scenario(opts, cmd, rc);
    if (!full) {
        return rc;
    }
    vcsim_scenario* raw_baseline = nullptr;
    vcsim_scenario* raw_attack = nullptr;
    vcsim_status status =
        vcsim_scenario_derive_baseline(full.get(), &raw_baseline);
    if (status != VCSIM_OK) {
        return report_error("deriving baseline", status);
    }
    ScenarioPtr baseline(raw_baseline);
    status = vcsim_scenario_derive_attack_only(full.get(), &raw_attack);
    if (status != VCSIM_OK) {
        return report_error("deriving attack-only", status);
    }
    ScenarioPtr attack(raw_attack);

    const std::string out_dir = resolved_out_dir(opts);
    struct Leg {
        const char* name;
        vcsim_scenario* scenario;
        ResultPtr result;
    };
    std::vector<Leg> legs;
    legs.push_back({"baseline", baseline.get(), nullptr});
    legs.push_back({"attack", attack.get(), nullptr});
    legs.push_back({"defense", full.get(), nullptr});
    bool incomplete = false;
    for (Leg& leg : legs) {
        vcsim_result* raw = nullptr;
        status = vcsim_run(leg.scenario, &raw);
        if (status != VCSIM_OK) {
            return report_error(leg.name, status);
        }
        leg.result.reset(raw);
        const std::string leg_dir = out_dir + "/" + leg.name;
        status = vcsim_result_write_outputs(leg.result.get(), leg_dir.c_str());
        if (status != VCSIM_OK) {
            return report_error("writing outputs", status);
        }
        print_summary(leg.name, leg.result.get());
        incomplete = incomplete || !vcsim_result_is_complete(leg.result.get());
    }

    vcsim_comparison* raw_cmp = nullptr;
    status = vcsim_compare(legs[0].result.get(), legs[1].result.get(),
                           legs[2].result.get(), &raw_cmp);
    if (status != VCSIM_OK) {
        return report_error("compare", status);
    }
    ComparisonPtr cmp(raw_cmp);
    const std::string cmp_path = out_dir + "/comparison.json";
    status = vcsim_comparison_write(cmp.get(), cmp_path.c_str());
    if (status != VCSIM_OK) {
        return report_error("writing comparison", status);
    }
    std::printf("attack delta %+.1f%%  defense recovery %+.1f%%  residual "
                "delay %+.1f s\n",
                vcsim_comparison_attack_delta_pct(cmp.get()),
                vcsim_comparison_defense_recovery_pct(cmp.get()),
                vcsim_comparison_residual_delay_s(cmp.get()));
    std::printf("comparison written to %s\n", cmp_path.c_str());
    if (incomplete) {
        std::fprintf(stderr,
                     "vcsim: at least one run hit its time horizon\n");
        return kExitNonTermination;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vcsim — connected-vehicle traffic simulation with "
                 "cyberattack and defense models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vcsim_version()));

    CommonOptions run_opts;
    CLI::App* run_cmd =
        app.add_subcommand("run", "run one scenario and write its outputs");
    add_common_options(run_cmd, run_opts);

    CommonOptions cmp_opts;
    CLI::App* cmp_cmd = app.add_subcommand(
        "compare",
        "run the baseline/attack/defense triad derived from one config");
    add_common_options(cmp_cmd, cmp_opts);

    CommonOptions net_opts;
    CLI::App* net_cmd =
        app.add_subcommand("network", "run a road-network scenario");
    add_common_options(net_cmd, net_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) != 0 ? kExitValidation : kExitOk;
    }

    if (run_cmd->parsed()) {
        return run_one(run_opts, run_cmd, /*require_network=*/false);
    }
    if (cmp_cmd->parsed()) {
        return run_compare(cmp_opts, cmp_cmd);
    }
    if (net_cmd->parsed()) {
        return run_one(net_opts, net_cmd, /*require_network=*/true);
    }
    return kExitValidation;
}
