#include "risched/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "risched/frequency.hpp"

namespace risched {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc2(double x) {
    if (x == 0.0) return 1.0;
    const double s = std::sin(x) / x;
    return s * s;
}

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace

std::vector<double> Configuration::wrapped_phases() const {
    std::vector<double> out(phases.size());
    std::transform(phases.begin(), phases.end(), out.begin(), [](double p) {
        double w = std::fmod(p, kTwoPi);
        if (w < 0.0) w += kTwoPi;
        return w;
    });
    return out;
}

Codebook::Codebook(std::vector<Configuration> configs, double tau, double x_tau, double cos_step)
    : configs_(std::move(configs)), tau_(tau), x_tau_(x_tau), cos_step_(cos_step) {
    if (configs_.empty()) throw std::invalid_argument("codebook must hold at least one configuration");
}

double solve_x_tau(double tau) {
    if (!(tau > 0.0) || tau > 1.0) throw std::invalid_argument("tau must lie in (0, 1]");
    if (tau == 1.0) return 0.0;
    // sinc^2 decreases monotonically from 1 to 0 on (0, pi)
    double lo = 0.0;
    double hi = std::numbers::pi;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (sinc2(mid) > tau)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ConfigCount num_configs(const RisGeometry& ris, double f0, double x_tau) {
    if (!(f0 > 0.0) || !(x_tau > 0.0)) throw std::invalid_argument("f0 and x_tau must be positive");
    const double inv_step =
        std::numbers::pi * ris.d_x() * static_cast<double>(ris.n_x()) * f0 / (x_tau * kPropagationSpeed);
    const double step = 1.0 / inv_step;
    ConfigCount out;
    out.raw_ceiling = static_cast<std::size_t>(std::ceil(inv_step));
    std::size_t c = 0;
    while (1.0 - (2.0 * static_cast<double>(c + 1) - 1.0) * step >= -1.0) ++c;
    out.valid_centers = c;
    return out;
}

std::vector<double> steering_phases(const RisGeometry& ris, double bs_azimuth,
                                    double center_azimuth, double f0) {
    const double dir = std::cos(bs_azimuth) + std::cos(center_azimuth);
    const double n_x = static_cast<double>(ris.n_x());
    const double residual = dir * (n_x + 1.0) / 2.0 * ris.d_x();
    const double k0 = kTwoPi / kPropagationSpeed * f0;
    std::vector<double> phases(ris.n_x());
    for (std::size_t n = 1; n <= ris.n_x(); ++n)
        phases[n - 1] = k0 * (residual - static_cast<double>(n) * ris.d_x() * dir);
    return phases;
}

Codebook design_codebook(const RisGeometry& ris, double bs_azimuth, double f0, double tau) {
    const double x_tau = solve_x_tau(tau);
    if (x_tau == 0.0) throw std::invalid_argument("tau = 1 gives zero-width beams");
    const auto count = num_configs(ris, f0, x_tau);
    if (count.valid_centers == 0) throw std::invalid_argument("RIS too small: no beam centre fits in (0, pi)");

    const double step = x_tau * kPropagationSpeed /
                        (std::numbers::pi * ris.d_x() * static_cast<double>(ris.n_x()) * f0);
    std::vector<Configuration> configs;
    configs.reserve(count.valid_centers);
    for (std::size_t c = 1; c <= count.valid_centers; ++c) {
        const double cd = static_cast<double>(c);
        Configuration cfg;
        cfg.index = c;
        cfg.cos_center = 1.0 - (2.0 * cd - 1.0) * step;
        cfg.cos_hp_minus = 1.0 - (2.0 * cd - 2.0) * step;
        cfg.cos_hp_plus = 1.0 - 2.0 * cd * step;
        cfg.center_azimuth = clamped_acos(cfg.cos_center);
        cfg.hp_minus = clamped_acos(cfg.cos_hp_minus);
        cfg.hp_plus = clamped_acos(cfg.cos_hp_plus);
        cfg.phases = steering_phases(ris, bs_azimuth, cfg.center_azimuth, f0);
        configs.push_back(std::move(cfg));
    }
    return Codebook(std::move(configs), tau, x_tau, step);
}

void write_codebook_csv(std::ostream& os, const Codebook& codebook) {
    const auto n_phases = codebook[0].phases.size();
    os << "config,center_deg,hp_minus_deg,hp_plus_deg";
    for (std::size_t n = 1; n <= n_phases; ++n) os << ",phase_" << n;
    os << '\n';
    const auto old_precision = os.precision(12);
    for (const auto& cfg : codebook) {
        os << cfg.index << ',' << rad2deg(cfg.center_azimuth) << ',' << rad2deg(cfg.hp_minus) << ','
           << rad2deg(cfg.hp_plus);
        for (double p : cfg.wrapped_phases()) os << ',' << p;
        os << '\n';
    }
    os.precision(old_precision);
}

}  // namespace risched
