#pragma once

// Distribution of a noncentral chi-squared variable with two degrees of
// freedom, chi2_2(xi). Everything is evaluated through its Poisson mixture
//
//   F(x; xi) = sum_j Pois(j; xi/2) * P[chi2_{2j+2} <= x],
//
// summed outward from the mode of the Poisson weights so that large
// noncentralities neither overflow nor lose terms.

namespace risched {

struct NcChi2Point {
    double cdf = 0.0;   // P[X <= x]
    double ccdf = 1.0;  // P[X > x], summed separately for upper-tail accuracy
    double pdf = 0.0;   // density of chi2_2(xi) at x
    double pdf4 = 0.0;  // density of chi2_4(xi) at x; equals -dF/dxi
};

/// Evaluates the mixture at x >= 0 for xi >= 0.
NcChi2Point nc_chi2_eval(double x, double xi);

double nc_chi2_cdf(double x, double xi);

/// First-order Marcum Q function Q_1(a, b) = P[chi2_2(a^2) > b^2].
double marcum_q1(double a, double b);

/// x such that F(x; xi) = p, to a relative tolerance of 1e-10. Throws
/// std::invalid_argument unless 0 < p < 1 and xi >= 0.
double inv_cdf_nc_chi2(double p, double xi);

}  // namespace risched
