#pragma once

#include <cstddef>
#include <vector>

#include "risched/channel.hpp"
#include "risched/codebook.hpp"
#include "risched/geometry.hpp"
#include "risched/rate_tensor.hpp"

namespace risched {

/// Decode-success target: a rate r is epsilon-robust when
/// P[r <= log2(1 + SNR)] >= epsilon.
struct OutageSpec {
    double epsilon = 0.95;

    void validate() const;
};

/// Which closed form to use for the noncentrality and SNR scale.
///
/// `derived` expands |E[h] + g|^2 directly: the cross term carries
/// sqrt(kappa (kappa+1) / beta_h) Re{conj(d) g} and the SNR scale includes
/// the direct-path gain beta_h. `literal` keeps an alternative closed form
/// (cross term sqrt((kappa+1)/beta_h) Re{d g}, no beta_h in the scale) for
/// comparison runs; its noncentrality is clamped at zero.
enum class LemmaForm { derived, literal };

/// Noncentrality xi of the normalized SNR 2(kappa+1)/beta_h |h + g|^2 on RB f.
double noncentrality(const PolarPosition& ue, const PolarPosition& bs, Complex g_kf, std::size_t f,
                     const FrequencyGrid& grid, const LinkBudget& budget,
                     LemmaForm form = LemmaForm::derived);

/// Epsilon-robust spectral efficiency (bit/s/Hz) of one resource, with an
/// exact quantile solve.
double robust_se(const PolarPosition& ue, const PolarPosition& bs, Complex g_kf, std::size_t f,
                 const FrequencyGrid& grid, const LinkBudget& budget, const OutageSpec& spec,
                 LemmaForm form = LemmaForm::derived);

/// Tabulated quantile xi -> F^{-1}(p; xi) of chi2_2(xi) at a fixed level p.
///
/// Nodes are uniform in s = sqrt(xi) and joined by cubic Hermite segments
/// whose slopes come from dF/dxi = -f_4, so a lookup costs one sqrt and a
/// handful of multiplies. Noncentralities past the table fall back to the
/// exact solver.
class QuantileTable {
public:
    explicit QuantileTable(double p, double s_max = 64.0, double s_step = 1.0 / 256.0);

    double operator()(double xi) const;
    double level() const { return p_; }
    double max_tabulated_xi() const { return s_max_ * s_max_; }

private:
    double p_;
    double s_max_;
    double s_step_;
    std::vector<double> q_;
    std::vector<double> dq_ds_;
};

/// Precomputed evaluator for the rate tensor. Immutable once built, so one
/// instance can be shared across Monte-Carlo worker threads.
class RobustRateModel {
public:
    RobustRateModel(const LinkBudget& budget, const OutageSpec& spec, LemmaForm form = LemmaForm::derived);

    const LinkBudget& budget() const { return budget_; }
    const OutageSpec& spec() const { return spec_; }
    LemmaForm form() const { return form_; }

    /// xi from the direct-path gain, the direct LOS phasor d_f and g.
    double noncentrality(double beta_h, Complex d_f, Complex g) const;

    /// log2(1 + scale * quantile(xi)) with the tabulated quantile.
    double rate(double xi, double beta_h) const;

private:
    LinkBudget budget_;
    OutageSpec spec_;
    LemmaForm form_;
    QuantileTable quantile_;
};

/// K x F x C tensor of epsilon-robust rates. Deterministic in the positions:
/// no fading draw enters. Throws std::invalid_argument on an empty scenario
/// or when the grid, RIS and codebook disagree.
RateTensor build_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                             const RobustRateModel& model);

RateTensor build_rate_tensor(const Scenario& scenario, const Codebook& codebook, const FrequencyGrid& grid,
                             const LinkBudget& budget, const OutageSpec& spec,
                             LemmaForm form = LemmaForm::derived);

}  // namespace risched
