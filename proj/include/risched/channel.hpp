#pragma once

#include <complex>
#include <span>
#include <vector>

#include "risched/codebook.hpp"
#include "risched/frequency.hpp"
#include "risched/geometry.hpp"

namespace risched {

using Complex = std::complex<double>;

/// Link-budget terms, all linear.
struct LinkBudget {
    double tx_power = 0.0;  // W, per user
    double noise_power = 0.0;  // W over one RB
    double rician_k = 0.0;
    double beta0 = 0.0;
    double pl_exponent = 0.0;
    double antenna_gain_product = 0.0;

    double snr_scale() const { return tx_power / noise_power; }
    /// Throws std::invalid_argument unless every term is positive (kappa >= 0).
    void validate() const;
};

/// Direct BS-UE coefficients, one per RB.
struct DirectChannel {
    std::vector<Complex> coefficients;
};

/// BS-RIS-UE coefficients for one configuration, one per RB.
struct ReflectedChannel {
    std::vector<Complex> coefficients;
};

/// beta0 * G_b G_k / r^exponent. Throws std::invalid_argument for r <= 0.
double pathloss(double r, const LinkBudget& budget);

/// Propagation-delay phasor of RB f over distance r.
Complex los_phasor(double r, std::size_t f, const FrequencyGrid& grid);

/// LOS vector d(r): entry f = exp(-j 2 pi (f0 + f delta_f) r / nu).
std::vector<Complex> los_vector(double r, const FrequencyGrid& grid);

/// Normalized array factor of a linearly phased RIS, evaluated at an
/// arbitrary offset (Hz) from f0. Real-valued, in [-1, 1].
double array_factor_at_offset(double ue_azimuth, double bs_azimuth, double config_azimuth,
                              double freq_offset, const RisGeometry& ris, double f0);

/// Same as array_factor_at_offset() with the three direction cosines
/// precomputed (user, BS, beam centre).
double array_factor_cos(double cos_ue, double cos_bs, double cos_config, double freq_offset,
                        const RisGeometry& ris, double f0);

/// Closed-form array factor on RB f.
double array_factor(double ue_azimuth, double bs_azimuth, double config_azimuth, std::size_t f,
                    const RisGeometry& ris, const FrequencyGrid& grid);

/// Normalized array factor by explicit summation over the N_x columns for an
/// arbitrary phase profile, including the N_z/N prefactor of the planar
/// array. Agrees with array_factor() when the phases come from
/// steering_phases().
Complex array_factor_sum(std::span<const double> phases, double ue_azimuth, double bs_azimuth,
                         std::size_t f, const RisGeometry& ris, const FrequencyGrid& grid);

/// g = sqrt(beta(r_k r_b)) N d(r_b + r_k) o a(config).
ReflectedChannel reflected_channel(const PolarPosition& ue, const PolarPosition& bs,
                                   const Configuration& config, const RisGeometry& ris,
                                   const FrequencyGrid& grid, const LinkBudget& budget);

/// One Rician draw of the direct channel on every RB.
DirectChannel sample_direct(const PolarPosition& ue, const PolarPosition& bs,
                            const FrequencyGrid& grid, const LinkBudget& budget, RandomStream& rng);

/// (P / sigma^2) |h + g|^2.
double snr(Complex h, Complex g, const LinkBudget& budget);

double db_to_linear(double db);
double linear_to_db(double lin);

}  // namespace risched
