#pragma once

#include <cstddef>

namespace risched {

/// Free-space propagation velocity in m/s.
inline constexpr double kPropagationSpeed = 2.998e8;

/// Largest number of resource blocks for which the array-factor variation
/// across the band stays negligible.
inline constexpr std::size_t kMaxResourceBlocks = 350;

/// OFDM resource-block grid: RB f is centred at f0 + f * delta_f.
struct FrequencyGrid {
    double f0 = 1.8e9;
    double delta_f = 180e3;
    std::size_t n_rb = 50;

    double frequency(std::size_t f) const { return f0 + static_cast<double>(f) * delta_f; }
    double wavelength(std::size_t f) const { return kPropagationSpeed / frequency(f); }

    /// Throws std::invalid_argument on a non-positive carrier/spacing or an
    /// RB count outside [1, kMaxResourceBlocks].
    void validate() const;
};

}  // namespace risched
