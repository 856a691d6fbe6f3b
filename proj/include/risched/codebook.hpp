#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "risched/geometry.hpp"

namespace risched {

/// One RIS phase-shift profile. The beam points at center_azimuth for RB 0
/// and the half-power edges bracket it. The cos_* members keep the exact
/// cosine-domain values; the azimuths are clamped to [0, pi].
struct Configuration {
    std::size_t index = 1;  // 1-based
    double center_azimuth = 0.0;
    double hp_minus = 0.0;
    double hp_plus = 0.0;
    double cos_center = 0.0;
    double cos_hp_minus = 0.0;
    double cos_hp_plus = 0.0;
    /// Unwrapped element phases for n = 1..N_x (radians). Rows along z share them.
    std::vector<double> phases;

    /// Phases reduced to [0, 2*pi).
    std::vector<double> wrapped_phases() const;
};

struct ConfigCount {
    std::size_t valid_centers = 0;  // configs whose beam centre exists (cos >= -1)
    std::size_t raw_ceiling = 0;    // ceil(pi d_x N_x f0 / (x_tau nu))
};

class Codebook {
public:
    Codebook(std::vector<Configuration> configs, double tau, double x_tau, double cos_step);

    std::size_t size() const { return configs_.size(); }
    const Configuration& operator[](std::size_t i) const { return configs_[i]; }
    const std::vector<Configuration>& configs() const { return configs_; }
    auto begin() const { return configs_.begin(); }
    auto end() const { return configs_.end(); }

    double tau() const { return tau_; }
    double x_tau() const { return x_tau_; }
    /// nu x_tau / (pi d_x N_x f0): half the cosine-domain width of every beam.
    double cos_step() const { return cos_step_; }

private:
    std::vector<Configuration> configs_;
    double tau_;
    double x_tau_;
    double cos_step_;
};

/// Smallest positive x with (sin x / x)^2 = tau, by bisection on (0, pi).
double solve_x_tau(double tau);

ConfigCount num_configs(const RisGeometry& ris, double f0, double x_tau);

/// Element phases steering RB 0 of a user at center_azimuth towards the BS.
std::vector<double> steering_phases(const RisGeometry& ris, double bs_azimuth,
                                    double center_azimuth, double f0);

/// Half-power-overlapping codebook covering azimuth (0, pi). Throws
/// std::invalid_argument if tau is outside (0, 1] or no beam fits.
Codebook design_codebook(const RisGeometry& ris, double bs_azimuth, double f0, double tau = 0.5);

/// CSV: config,center_deg,hp_minus_deg,hp_plus_deg,phase_1..phase_Nx (wrapped radians).
void write_codebook_csv(std::ostream& os, const Codebook& codebook);

}  // namespace risched
