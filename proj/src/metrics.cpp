#include "risched/metrics.hpp"

#include <cmath>

namespace risched {

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::jnt: return "jnt";
        case Scheme::seq: return "seq";
        case Scheme::csi: return "csi";
    }
    return "?";
}

Scheme parse_scheme(const std::string& text) {
    if (text == "jnt") return Scheme::jnt;
    if (text == "seq") return Scheme::seq;
    if (text == "csi") return Scheme::csi;
    throw std::invalid_argument("unknown scheme '" + text + "' (expected jnt, seq or csi)");
}

void FrameSpec::validate() const {
    if (n_slots == 0) throw std::invalid_argument("frame needs at least one slot");
    if (tau_ofdm == 0) throw std::invalid_argument("slot needs at least one OFDM symbol");
    if (tau_d + tau_l != tau_ofdm) throw std::invalid_argument("data + localization symbols must fill the slot");
    if (tau_d == 0) throw std::invalid_argument("slot needs at least one data symbol");
}

std::size_t csi_pilot_length(std::size_t users, std::size_t n_x) { return users * (n_x + 1); }

double efficiency(Scheme scheme, const FrameSpec& frame, const OutageSpec& spec, std::size_t users,
                  std::size_t n_x) {
    frame.validate();
    if (scheme == Scheme::csi) {
        const double payload = static_cast<double>(frame.n_slots * frame.tau_ofdm);
        return payload / (payload + static_cast<double>(csi_pilot_length(users, n_x)));
    }
    const double data_share = static_cast<double>(frame.tau_d) / static_cast<double>(frame.tau_d + frame.tau_l);
    return spec.epsilon * data_share;
}

double throughput(const UserRates& rates, const FrameSpec& frame, double delta_f, double eta) {
    if (!(delta_f > 0.0) || frame.n_slots == 0) throw std::invalid_argument("throughput needs positive delta_f and S");
    return eta * (delta_f / static_cast<double>(frame.n_slots)) * rates.total();
}

double jain_index(const UserRates& rates) {
    if (rates.r.empty()) throw UndefinedMetric("Jain index of an empty user set");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : rates.r) {
        sum += v;
        sum_sq += v * v;
    }
    if (sum_sq == 0.0) throw UndefinedMetric("Jain index undefined when every rate is zero");
    return sum * sum / (static_cast<double>(rates.r.size()) * sum_sq);
}

MetricsReport evaluate(Scheme scheme, const UserRates& rates, const FrameSpec& frame, double delta_f, double eta) {
    MetricsReport report;
    report.scheme = scheme;
    report.efficiency = eta;
    report.mean_throughput = throughput(rates, frame, delta_f, eta);
    report.jain = jain_index(rates);
    const double scale = eta * delta_f / static_cast<double>(frame.n_slots);
    report.per_user_throughput.reserve(rates.r.size());
    for (double v : rates.r) report.per_user_throughput.push_back(scale * v);
    return report;
}

RateTensor csi_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                           const LinkBudget& budget, const std::vector<DirectChannel>& direct) {
    scenario.validate();
    grid.validate();
    if (direct.size() != scenario.users.size()) throw std::invalid_argument("need one direct channel per user");
    const auto& ris = scenario.ris;
    const auto& bs = scenario.bs;
    const std::size_t K = scenario.users.size();
    const std::size_t F = grid.n_rb;
    const std::size_t C = codebook.size();
    RateTensor rates(K, F, C);

    const double cos_b = std::cos(bs.azimuth);
    std::vector<double> cos_c(C);
    for (std::size_t c = 0; c < C; ++c) cos_c[c] = std::cos(codebook[c].center_azimuth);

    std::vector<Complex> d_reflect(F);
    for (std::size_t k = 0; k < K; ++k) {
        const auto& ue = scenario.users[k];
        const auto& h = direct[k].coefficients;
        if (h.size() != F) throw std::invalid_argument("direct channel length must equal the RB count");
        const double amplitude = std::sqrt(pathloss(ue.range * bs.range, budget)) * static_cast<double>(ris.size());
        const double cos_k = std::cos(ue.azimuth);
        for (std::size_t f = 0; f < F; ++f) d_reflect[f] = los_phasor(bs.range + ue.range, f, grid);
        for (std::size_t c = 0; c < C; ++c) {
            for (std::size_t f = 0; f < F; ++f) {
                const double af =
                    array_factor_cos(cos_k, cos_b, cos_c[c], static_cast<double>(f) * grid.delta_f, ris, grid.f0);
                rates.at(k, f, c) = std::log2(1.0 + snr(h[f], amplitude * af * d_reflect[f], budget));
            }
        }
    }
    return rates;
}

RateTensor csi_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                           const LinkBudget& budget, RandomStream& rng) {
    std::vector<DirectChannel> direct;
    direct.reserve(scenario.users.size());
    for (const auto& ue : scenario.users) direct.push_back(sample_direct(ue, scenario.bs, grid, budget, rng));
    return csi_rate_tensor(scenario, codebook, grid, budget, direct);
}

}  // namespace risched
