#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "risched/allocation.hpp"
#include "risched/channel.hpp"
#include "risched/codebook.hpp"
#include "risched/geometry.hpp"
#include "risched/rate_tensor.hpp"
#include "risched/robust_rate.hpp"

namespace risched {

/// jnt / seq: localization-based joint and sequential allocation.
/// csi: perfect-CSI benchmark paying a pilot overhead.
enum class Scheme { jnt, seq, csi };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

struct FrameSpec {
    std::size_t n_slots = 11;
    std::size_t tau_ofdm = 14;
    std::size_t tau_d = 7;
    std::size_t tau_l = 7;

    void validate() const;
};

/// Thrown when a metric has no meaning for the input (e.g. Jain on all zeros).
class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct MetricsReport {
    Scheme scheme = Scheme::jnt;
    double mean_throughput = 0.0;  // bit/s
    double jain = 0.0;
    std::vector<double> per_user_throughput;  // bit/s
    double efficiency = 0.0;
};

/// Pilot symbols for minimal-length CE: K (N_x + 1).
std::size_t csi_pilot_length(std::size_t users, std::size_t n_x);

double efficiency(Scheme scheme, const FrameSpec& frame, const OutageSpec& spec, std::size_t users,
                  std::size_t n_x);

/// eta * (delta_f / S) * sum_k r_k.
double throughput(const UserRates& rates, const FrameSpec& frame, double delta_f, double eta);

/// (sum r)^2 / (K sum r^2). Throws UndefinedMetric if every rate is zero.
double jain_index(const UserRates& rates);

MetricsReport evaluate(Scheme scheme, const UserRates& rates, const FrameSpec& frame, double delta_f, double eta);

/// Instantaneous capacities log2(1 + SNR) with known fading. `direct` holds
/// one realization per user.
RateTensor csi_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                           const LinkBudget& budget, const std::vector<DirectChannel>& direct);

/// Draws the fading for every user from `rng` in user order, then builds the tensor.
RateTensor csi_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                           const LinkBudget& budget, RandomStream& rng);

}  // namespace risched
