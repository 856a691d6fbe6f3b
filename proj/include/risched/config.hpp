#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "risched/allocation.hpp"
#include "risched/channel.hpp"
#include "risched/codebook.hpp"
#include "risched/frequency.hpp"
#include "risched/geometry.hpp"
#include "risched/metrics.hpp"
#include "risched/robust_rate.hpp"

namespace risched {

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepVar { none, users, kappa_db };

std::string to_string(SweepVar var);

/// Every knob of a simulation run. Defaults reproduce the reference scenario;
/// dB-valued keys carry a _db / _dbm suffix and are converted when the
/// downstream types are built.
struct ScenarioConfig {
    // [geometry]
    double ring_inner_m = 9.0;
    double ring_outer_m = 30.0;
    double bs_x_m = 10.0;
    double bs_y_m = 100.0;
    double bs_z_m = 0.0;
    RadiusLaw radius_law = RadiusLaw::area_uniform;

    // [ris]
    std::size_t n_x = 10;
    std::size_t n_z = 10;
    double spacing_wavelengths = 0.5;  // d_x = d_z = spacing * lambda_0
    double codebook_tau = 0.5;

    // [ofdm]
    double f0_hz = 1.8e9;
    double delta_f_hz = 180e3;
    std::size_t n_rb = 50;
    std::size_t n_slots = 11;
    std::size_t tau_ofdm = 14;
    std::size_t tau_d = 7;
    std::size_t tau_l = 7;

    // [link]
    double epsilon = 0.95;
    double antenna_gain_db = 12.85;
    double pathloss_exponent = 2.7;
    double beta0_db = -31.53;
    double tx_power_dbm = 20.0;
    double noise_power_dbm = -112.45;
    double rician_k_db = -9.0;
    bool lemma_literal = false;

    // [experiment]
    std::size_t users = 55;
    Objective objective = Objective::max_rate;
    std::vector<Scheme> schemes{Scheme::jnt, Scheme::seq, Scheme::csi};
    std::size_t trials = 500;
    std::uint64_t seed = 1;
    OverloadPolicy seq_overload = OverloadPolicy::error;
    SweepVar sweep_var = SweepVar::none;
    std::vector<double> sweep_values;

    FrequencyGrid grid() const;
    LinkBudget budget() const;
    RisGeometry ris() const;
    RingArea ring() const;
    PolarPosition bs() const;
    FrameSpec frame() const;
    OutageSpec outage() const;
    LemmaForm lemma_form() const { return lemma_literal ? LemmaForm::literal : LemmaForm::derived; }

    /// Runs every downstream invariant check; throws ConfigError.
    void validate() const;

    /// Canonical `key = value` text with sections, in a fixed order.
    std::string to_text() const;

    /// FNV-1a hash of to_text(), hex encoded.
    std::string hash() const;
};

/// Parses INI-style text. Unknown sections or keys are rejected.
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Loads and parses a config file; a missing file is a ConfigError naming the path.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Applies `key=value` (or `section.key=value`) to cfg.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

/// Names of every recognised key, `section.key`.
std::vector<std::string> config_keys();

}  // namespace risched
