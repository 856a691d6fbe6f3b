#include "risched/noncentral_chi2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace risched {

namespace {

// Poisson weights below this are dropped; the discarded tails are bounded by
// a geometric series well under 1e-15.
constexpr double kWeightFloor = 1e-20;

double poisson_pmf(double j, double mean) {
    if (mean == 0.0) return j == 0.0 ? 1.0 : 0.0;
    return std::exp(j * std::log(mean) - mean - std::lgamma(j + 1.0));
}

}  // namespace

NcChi2Point nc_chi2_eval(double x, double xi) {
    if (!(xi >= 0.0)) throw std::invalid_argument("noncentrality must be non-negative");
    NcChi2Point out;
    if (!(x > 0.0)) {
        out.cdf = 0.0;
        out.ccdf = 1.0;
        out.pdf = xi == 0.0 ? 0.5 : 0.5 * std::exp(-xi / 2.0);
        out.pdf4 = 0.0;
        return out;
    }

    const double lambda = xi / 2.0;
    const double mu = x / 2.0;
    const double j0 = std::floor(lambda);

    // Mixture component j: P[chi2_{2j+2} <= x] = P[Pois(mu) >= j+1] = gamma_p(j+1, mu).
    const double w0 = poisson_pmf(j0, lambda);
    const double p0 = poisson_pmf(j0, mu);
    const double lower0 = boost::math::gamma_p(j0 + 1.0, mu);
    const double upper0 = boost::math::gamma_q(j0 + 1.0, mu);
    const double p1_at0 = poisson_pmf(j0 + 1.0, mu);

    double cdf = w0 * lower0;
    double ccdf = w0 * upper0;
    double pdf = w0 * p0;
    double pdf4 = w0 * p1_at0;
    double weight = w0;

    // forward: j = j0+1, j0+2, ...
    {
        double w = w0;
        double lower = lower0;
        double upper = upper0;
        double pj = p1_at0;  // Pois(j; mu) for the current j
        for (double j = j0 + 1.0;; j += 1.0) {
            w *= lambda / j;
            if (pj == 0.0) pj = poisson_pmf(j, mu);
            lower = std::max(lower - pj, 0.0);
            upper = std::min(upper + pj, 1.0);
            const double pnext = pj * mu / (j + 1.0);
            cdf += w * lower;
            ccdf += w * upper;
            pdf += w * pj;
            pdf4 += w * pnext;
            weight += w;
            pj = pnext;
            if (w < kWeightFloor || w == 0.0) break;
        }
    }
    // backward: j = j0-1, ..., 0
    {
        double w = w0;
        double lower = lower0;
        double upper = upper0;
        double pj = p0;  // Pois(j+1; mu) relative to the new j below
        for (double j = j0 - 1.0; j >= 0.0; j -= 1.0) {
            w *= (j + 1.0) / lambda;
            // moving from component j+1 to j: P[Pois >= j+1] gains Pois(j+1; mu)
            if (pj == 0.0) pj = poisson_pmf(j + 1.0, mu);
            lower = std::min(lower + pj, 1.0);
            upper = std::max(upper - pj, 0.0);
            const double pcur = pj * (j + 1.0) / mu;
            cdf += w * lower;
            ccdf += w * upper;
            pdf += w * pcur;
            pdf4 += w * pj;
            weight += w;
            pj = pcur;
            if (w < kWeightFloor) break;
        }
    }

    // Normalizing by the kept weight cancels the rounding of the weight
    // recurrence and of w0 itself, which grows with lambda.
    cdf /= weight;
    ccdf /= weight;
    // each tail is accurate in relative terms only while it is the small one
    if (cdf < ccdf)
        ccdf = 1.0 - cdf;
    else
        cdf = 1.0 - ccdf;
    out.cdf = std::clamp(cdf, 0.0, 1.0);
    out.ccdf = std::clamp(ccdf, 0.0, 1.0);
    out.pdf = 0.5 * pdf / weight;
    out.pdf4 = 0.5 * pdf4 / weight;
    return out;
}

double nc_chi2_cdf(double x, double xi) { return nc_chi2_eval(x, xi).cdf; }

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("Marcum Q arguments must be non-negative");
    if (b == 0.0) return 1.0;
    return nc_chi2_eval(b * b, a * a).ccdf;
}

double inv_cdf_nc_chi2(double p, double xi) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1)");
    if (!(xi >= 0.0)) throw std::invalid_argument("noncentrality must be non-negative");
    if (xi == 0.0) return -2.0 * std::log1p(-p);

    double lo = 0.0;
    double hi = xi + 2.0 + 20.0 * std::sqrt(xi + 1.0);
    while (nc_chi2_cdf(hi, xi) < p) {
        lo = hi;
        hi *= 2.0;
    }

    // normal approximation as the Newton starting point
    const double z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
    double x = xi + 2.0 + 2.0 * z * std::sqrt(1.0 + xi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    constexpr double kRelTol = 1e-10;
    for (int iter = 0; iter < 400; ++iter) {
        const auto e = nc_chi2_eval(x, xi);
        const double resid = e.cdf - p;
        if (resid == 0.0) return x;
        if (resid < 0.0)
            lo = x;
        else
            hi = x;
        double next = e.pdf > 0.0 ? x - resid / e.pdf : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= kRelTol * next || hi - lo <= kRelTol * hi) return next;
        x = next;
    }
    return x;
}

}  // namespace risched
