#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risched/config.hpp"

namespace risched {

/// Everything a trial needs that does not depend on the random draws.
/// Built once per sweep point and shared read-only by the workers.
struct Experiment {
    explicit Experiment(const ScenarioConfig& config);

    ScenarioConfig cfg;
    FrequencyGrid grid;
    LinkBudget budget;
    RisGeometry ris;
    RingArea ring;
    PolarPosition bs;
    FrameSpec frame;
    OutageSpec outage;
    Codebook codebook;
    RobustRateModel model;
};

/// Per-scheme user rates of one deployment, in cfg.schemes order.
struct TrialOutcome {
    std::vector<Scheme> schemes;
    std::vector<UserRates> rates;

    const UserRates& of(Scheme scheme) const;
};

/// One ring deployment. User k's position comes from substream
/// (seed, trial, 0, k) and its direct-path fading from (seed, trial, 1, k),
/// so the first K users of a trial are shared by every sweep point.
TrialOutcome run_trial(const Experiment& exp, std::uint64_t trial);

struct ResultRow {
    double sweep_value = 0.0;
    Scheme scheme = Scheme::jnt;
    std::size_t users = 0;
    double efficiency = 0.0;
    double mean_throughput = 0.0;  // bit/s, mean over trials
    double stderr_throughput = 0.0;
    double jain_mean = 0.0;
    double jain_stderr = 0.0;
    double per_user_throughput = 0.0;  // mean_throughput / K
};

struct ExperimentResult {
    SweepVar sweep_var = SweepVar::none;
    std::vector<double> sweep_values;
    Objective objective = Objective::max_rate;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::string version;
    std::vector<ResultRow> rows;  // sweep point major, scheme minor

    const ResultRow& row(double sweep_value, Scheme scheme) const;
};

/// Runs cfg.trials trials at every point of cfg's sweep (a single point when
/// sweep_var is none). threads == 0 picks the hardware concurrency. Output
/// does not depend on the thread count.
ExperimentResult run_sweep(const ScenarioConfig& cfg, std::size_t threads = 1);

/// Config for one sweep point.
ScenarioConfig at_sweep_point(const ScenarioConfig& cfg, double value);

void write_csv(std::ostream& os, const ExperimentResult& result);
void write_json(std::ostream& os, const ExperimentResult& result);

/// Names accepted by preset_config().
std::vector<std::string> preset_names();

/// Applies a named preset's sweep and objective on top of `base`.
/// "custom" returns base unchanged.
ScenarioConfig preset_config(const std::string& name, ScenarioConfig base = {});

/// Library version stamped into outputs.
std::string version();

/// Command-line entry point. Returns 0 on success, 2 on configuration
/// errors, 3 when an allocation is infeasible and 1 on anything else.
int cli_main(int argc, char** argv);

}  // namespace risched
