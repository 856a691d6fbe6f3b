#include "risched/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risched {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance on the distance of pi*d_x*psi/nu from a multiple of pi, below
// which the removable singularity is replaced by its limit.
constexpr double kSingularityTol = 1e-9;

}  // namespace

void LinkBudget::validate() const {
    if (!(tx_power > 0.0)) throw std::invalid_argument("transmit power must be positive");
    if (!(noise_power > 0.0)) throw std::invalid_argument("noise power must be positive");
    if (!(rician_k >= 0.0)) throw std::invalid_argument("Rician factor must be non-negative");
    if (!(beta0 > 0.0)) throw std::invalid_argument("reference path gain must be positive");
    if (!(pl_exponent >= 0.0)) throw std::invalid_argument("path-loss exponent must be non-negative");
    if (!(antenna_gain_product > 0.0)) throw std::invalid_argument("antenna gain must be positive");
}

double pathloss(double r, const LinkBudget& budget) {
    if (!(r > 0.0)) throw std::invalid_argument("path-loss distance must be positive");
    return budget.beta0 * budget.antenna_gain_product / std::pow(r, budget.pl_exponent);
}

Complex los_phasor(double r, std::size_t f, const FrequencyGrid& grid) {
    return std::polar(1.0, -kTwoPi / kPropagationSpeed * grid.frequency(f) * r);
}

std::vector<Complex> los_vector(double r, const FrequencyGrid& grid) {
    if (!(r > 0.0)) throw std::invalid_argument("LOS distance must be positive");
    std::vector<Complex> d(grid.n_rb);
    for (std::size_t f = 0; f < grid.n_rb; ++f) d[f] = los_phasor(r, f, grid);
    return d;
}

double array_factor_cos(double cos_ue, double cos_bs, double cos_config, double freq_offset,
                        const RisGeometry& ris, double f0) {
    const double psi = f0 * (cos_ue - cos_config) + freq_offset * (cos_ue + cos_bs);
    const double x = std::numbers::pi * ris.d_x() / kPropagationSpeed * psi;
    const double n_x = static_cast<double>(ris.n_x());
    const double m = std::round(x / std::numbers::pi);
    if (std::abs(x - m * std::numbers::pi) < kSingularityTol) {
        // limit of sin(N x)/(N sin x) at x = m pi is (-1)^(m (N-1))
        const auto parity = static_cast<long long>(std::abs(m)) * static_cast<long long>(ris.n_x() - 1);
        return parity % 2 == 0 ? 1.0 : -1.0;
    }
    return std::sin(n_x * x) / (n_x * std::sin(x));
}

double array_factor_at_offset(double ue_azimuth, double bs_azimuth, double config_azimuth,
                              double freq_offset, const RisGeometry& ris, double f0) {
    return array_factor_cos(std::cos(ue_azimuth), std::cos(bs_azimuth), std::cos(config_azimuth),
                            freq_offset, ris, f0);
}

double array_factor(double ue_azimuth, double bs_azimuth, double config_azimuth, std::size_t f,
                    const RisGeometry& ris, const FrequencyGrid& grid) {
    return array_factor_at_offset(ue_azimuth, bs_azimuth, config_azimuth,
                                  static_cast<double>(f) * grid.delta_f, ris, grid.f0);
}

Complex array_factor_sum(std::span<const double> phases, double ue_azimuth, double bs_azimuth,
                         std::size_t f, const RisGeometry& ris, const FrequencyGrid& grid) {
    if (phases.size() != ris.n_x()) throw std::invalid_argument("phase profile length must equal N_x");
    const double k = kTwoPi / kPropagationSpeed * grid.frequency(f);
    const double dir = std::cos(ue_azimuth) + std::cos(bs_azimuth);
    const double n_x = static_cast<double>(ris.n_x());
    Complex sum{0.0, 0.0};
    for (std::size_t n = 1; n <= ris.n_x(); ++n)
        sum += std::polar(1.0, phases[n - 1] + k * static_cast<double>(n) * ris.d_x() * dir);
    const Complex prefactor = std::polar(1.0, -k * (n_x + 1.0) / 2.0 * ris.d_x() * dir);
    const double row_weight = static_cast<double>(ris.n_z()) / static_cast<double>(ris.size());
    return row_weight * prefactor * sum;
}

ReflectedChannel reflected_channel(const PolarPosition& ue, const PolarPosition& bs,
                                   const Configuration& config, const RisGeometry& ris,
                                   const FrequencyGrid& grid, const LinkBudget& budget) {
    const double amplitude = std::sqrt(pathloss(ue.range * bs.range, budget)) * static_cast<double>(ris.size());
    const double delay_range = bs.range + ue.range;
    ReflectedChannel g;
    g.coefficients.resize(grid.n_rb);
    for (std::size_t f = 0; f < grid.n_rb; ++f) {
        const double af = array_factor(ue.azimuth, bs.azimuth, config.center_azimuth, f, ris, grid);
        g.coefficients[f] = amplitude * af * los_phasor(delay_range, f, grid);
    }
    return g;
}

DirectChannel sample_direct(const PolarPosition& ue, const PolarPosition& bs,
                            const FrequencyGrid& grid, const LinkBudget& budget, RandomStream& rng) {
    const double r_bk = bs_ue_distance(bs, ue);
    const double amplitude = std::sqrt(pathloss(r_bk, budget));
    const double kappa = budget.rician_k;
    const double los_weight = std::sqrt(kappa / (kappa + 1.0));
    const double nlos_weight = std::sqrt(1.0 / (kappa + 1.0));
    // CN(0, 1): unit total variance split over the two quadratures
    std::normal_distribution<double> quadrature(0.0, std::sqrt(0.5));
    DirectChannel h;
    h.coefficients.resize(grid.n_rb);
    for (std::size_t f = 0; f < grid.n_rb; ++f) {
        const double re = quadrature(rng);
        const double im = quadrature(rng);
        h.coefficients[f] = amplitude * (los_weight * los_phasor(r_bk, f, grid) + nlos_weight * Complex(re, im));
    }
    return h;
}

double snr(Complex h, Complex g, const LinkBudget& budget) { return budget.snr_scale() * std::norm(h + g); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace risched
