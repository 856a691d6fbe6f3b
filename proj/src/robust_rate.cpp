#include "risched/robust_rate.hpp"

#include <cmath>
#include <stdexcept>

#include "risched/noncentral_chi2.hpp"

namespace risched {

void OutageSpec::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

namespace {

double xi_from_terms(double kappa, double beta_h, Complex d_f, Complex g, LemmaForm form) {
    const double k1 = kappa + 1.0;
    double xi = 0.0;
    if (form == LemmaForm::derived) {
        xi = 2.0 * (kappa + k1 / beta_h * std::norm(g) +
                    2.0 * std::sqrt(kappa * k1 / beta_h) * (std::conj(d_f) * g).real());
    } else {
        xi = 2.0 * (kappa + k1 / beta_h * std::norm(g) + 2.0 * std::sqrt(k1 / beta_h) * (d_f * g).real());
    }
    // derived form is 2|mu|^2 >= 0 up to rounding; literal can go negative
    return std::max(xi, 0.0);
}

double snr_scale(const LinkBudget& budget, double beta_h, LemmaForm form) {
    const double base = budget.tx_power / (2.0 * budget.noise_power * (budget.rician_k + 1.0));
    return form == LemmaForm::derived ? base * beta_h : base;
}

}  // namespace

double noncentrality(const PolarPosition& ue, const PolarPosition& bs, Complex g_kf, std::size_t f,
                     const FrequencyGrid& grid, const LinkBudget& budget, LemmaForm form) {
    const double r_bk = bs_ue_distance(bs, ue);
    return xi_from_terms(budget.rician_k, pathloss(r_bk, budget), los_phasor(r_bk, f, grid), g_kf, form);
}

double robust_se(const PolarPosition& ue, const PolarPosition& bs, Complex g_kf, std::size_t f,
                 const FrequencyGrid& grid, const LinkBudget& budget, const OutageSpec& spec, LemmaForm form) {
    spec.validate();
    const double r_bk = bs_ue_distance(bs, ue);
    const double beta_h = pathloss(r_bk, budget);
    const double xi = xi_from_terms(budget.rician_k, beta_h, los_phasor(r_bk, f, grid), g_kf, form);
    const double q = inv_cdf_nc_chi2(1.0 - spec.epsilon, xi);
    return std::log2(1.0 + snr_scale(budget, beta_h, form) * q);
}

QuantileTable::QuantileTable(double p, double s_max, double s_step) : p_(p), s_max_(s_max), s_step_(s_step) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1)");
    if (!(s_step > 0.0) || !(s_max > s_step)) throw std::invalid_argument("invalid quantile table range");
    const auto nodes = static_cast<std::size_t>(std::ceil(s_max / s_step)) + 1;
    s_max_ = static_cast<double>(nodes - 1) * s_step;
    q_.resize(nodes);
    dq_ds_.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double s = static_cast<double>(i) * s_step;
        const double xi = s * s;
        const double q = inv_cdf_nc_chi2(p, xi);
        const auto e = nc_chi2_eval(q, xi);
        q_[i] = q;
        // F(q(xi), xi) = p  =>  dq/dxi = f_4 / f_2,  dq/ds = 2 s dq/dxi
        dq_ds_[i] = 2.0 * s * e.pdf4 / e.pdf;
    }
}

double QuantileTable::operator()(double xi) const {
    const double s = std::sqrt(xi);
    if (!(s < s_max_)) return inv_cdf_nc_chi2(p_, xi);
    const double u = s / s_step_;
    const auto i = static_cast<std::size_t>(u);
    const double t = u - static_cast<double>(i);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * q_[i] + h10 * s_step_ * dq_ds_[i] + h01 * q_[i + 1] + h11 * s_step_ * dq_ds_[i + 1];
}

RobustRateModel::RobustRateModel(const LinkBudget& budget, const OutageSpec& spec, LemmaForm form)
    : budget_(budget), spec_(spec), form_(form), quantile_((spec.validate(), 1.0 - spec.epsilon)) {
    budget_.validate();
}

double RobustRateModel::noncentrality(double beta_h, Complex d_f, Complex g) const {
    return xi_from_terms(budget_.rician_k, beta_h, d_f, g, form_);
}

double RobustRateModel::rate(double xi, double beta_h) const {
    return std::log2(1.0 + snr_scale(budget_, beta_h, form_) * quantile_(xi));
}

RateTensor build_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                             const RobustRateModel& model) {
    scenario.validate();
    grid.validate();
    const auto& ris = scenario.ris;
    if (codebook[0].phases.size() != ris.n_x())
        throw std::invalid_argument("codebook was designed for a different RIS size");

    const std::size_t K = scenario.users.size();
    const std::size_t F = grid.n_rb;
    const std::size_t C = codebook.size();
    RateTensor rates(K, F, C);

    const auto& budget = model.budget();
    const auto& bs = scenario.bs;
    const double cos_b = std::cos(bs.azimuth);
    std::vector<double> cos_c(C);
    for (std::size_t c = 0; c < C; ++c) cos_c[c] = std::cos(codebook[c].center_azimuth);

    std::vector<Complex> d_direct(F);
    std::vector<Complex> d_reflect(F);
    for (std::size_t k = 0; k < K; ++k) {
        const auto& ue = scenario.users[k];
        const double r_bk = bs_ue_distance(bs, ue);
        const double beta_h = pathloss(r_bk, budget);
        const double amplitude = std::sqrt(pathloss(ue.range * bs.range, budget)) * static_cast<double>(ris.size());
        const double cos_k = std::cos(ue.azimuth);
        for (std::size_t f = 0; f < F; ++f) {
            d_direct[f] = los_phasor(r_bk, f, grid);
            d_reflect[f] = los_phasor(bs.range + ue.range, f, grid);
        }
        for (std::size_t c = 0; c < C; ++c) {
            for (std::size_t f = 0; f < F; ++f) {
                const double af =
                    array_factor_cos(cos_k, cos_b, cos_c[c], static_cast<double>(f) * grid.delta_f, ris, grid.f0);
                const Complex g = amplitude * af * d_reflect[f];
                rates.at(k, f, c) = model.rate(model.noncentrality(beta_h, d_direct[f], g), beta_h);
            }
        }
    }
    return rates;
}

RateTensor build_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                             const LinkBudget& budget, const OutageSpec& spec, LemmaForm form) {
    return build_rate_tensor(scenario, codebook, grid, RobustRateModel(budget, spec, form));
}

}  // namespace risched
